use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error("no cluster heads available while alive nodes remain")]
    NoHeads,

    #[error("candidate cluster heads hold no residual energy")]
    DeadHeads,

    #[error("candidates disagree on cluster count: {left} vs {right}")]
    CandidateMismatch { left: usize, right: usize },

    #[error("need {needed} cluster heads but only {available} nodes are available")]
    InfeasibleClusterCount { needed: usize, available: usize },

    #[error("election threshold denominator vanished at round {round}")]
    DegenerateThreshold { round: u32 },

    #[error("exhaustive search over {combinations} head sets exceeds the limit of {limit}")]
    OracleTooLarge { combinations: u128, limit: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SimError>;
