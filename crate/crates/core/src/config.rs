//! Line-oriented `key = value` configuration.
//!
//! Missing keys fall back to defaults; a few defaults derive from the
//! field geometry (base station at the center, `gamma = 1 / side^2`,
//! `alpha = 0.05 * side`, LEACH probability equal to the cluster
//! fraction). Unknown or duplicate keys are errors. [`SimConfig::dump`]
//! emits every resolved value and parses back to an equal config.

use crate::cost::CostWeights;
use crate::error::{Result, SimError};
use crate::firefly::OptimizerParams;
use crate::jumper::JumperParams;
use crate::leach::LeachElection;
use crate::network::{EnergyMode, FieldConfig, Point};
use crate::radio::RadioParams;
use std::fmt::Write as _;
use std::path::Path;

/// Fully resolved simulation settings.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub side_length: f64,
    pub node_count: usize,
    pub base_station_x: f64,
    pub base_station_y: f64,
    pub cluster_fraction: f64,
    pub energy_mode: EnergyMode,
    pub initial_energy_j: f64,
    pub payload_bits: u64,
    pub e_elec_j: f64,
    pub e_da_j: f64,
    pub eps_fs_j: f64,
    pub eps_mp_j: f64,
    pub beta: f64,
    pub swarm_size: usize,
    pub max_generations: u32,
    pub beta0: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub attractiveness_exponent: f64,
    pub eta: u32,
    pub omega: f64,
    pub head_probability: f64,
    pub max_rounds: u32,
}

impl Default for SimConfig {
    fn default() -> Self {
        parse_config("").expect("empty config resolves to defaults")
    }
}

const KEYS: [&str; 23] = [
    "side_length",
    "node_count",
    "base_station_x",
    "base_station_y",
    "cluster_fraction",
    "energy_mode",
    "initial_energy_j",
    "payload_bits",
    "e_elec_j",
    "e_da_j",
    "eps_fs_j",
    "eps_mp_j",
    "beta",
    "swarm_size",
    "max_generations",
    "beta0",
    "gamma",
    "alpha",
    "attractiveness_exponent",
    "eta",
    "omega",
    "head_probability",
    "max_rounds",
];

fn parse_number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| SimError::ConfigParse {
        line,
        message: format!("key `{key}`: expected a number, got `{value}`"),
    })
}

fn parse_mode(line: usize, value: &str) -> Result<EnergyMode> {
    match value {
        "homogeneous" => Ok(EnergyMode::Homogeneous),
        "heterogeneous" => Ok(EnergyMode::Heterogeneous),
        other => Err(SimError::ConfigParse {
            line,
            message: format!(
                "key `energy_mode`: expected `homogeneous` or `heterogeneous`, got `{other}`"
            ),
        }),
    }
}

fn mode_name(mode: EnergyMode) -> &'static str {
    match mode {
        EnergyMode::Homogeneous => "homogeneous",
        EnergyMode::Heterogeneous => "heterogeneous",
    }
}

/// Format a value so it survives a parse round trip without exploding
/// into long zero runs for the radio constants.
fn format_value(value: f64) -> String {
    if value == 0.0 {
        "0".to_string()
    } else if value.abs() >= 1e-3 && value.abs() < 1e7 {
        format!("{value}")
    } else {
        format!("{value:e}")
    }
}

/// Parse configuration text. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<SimConfig> {
    let mut side_length = 200.0;
    let mut node_count = 100usize;
    let mut base_station_x = None;
    let mut base_station_y = None;
    let mut cluster_fraction = 0.05;
    let mut energy_mode = EnergyMode::Homogeneous;
    let mut initial_energy_j = 0.2;
    let mut payload_bits = 4000u64;
    let mut e_elec_j = 50e-9;
    let mut e_da_j = 50e-9;
    let mut eps_fs_j = 10e-12;
    let mut eps_mp_j = 0.0013e-12;
    let mut beta = 0.5;
    let mut swarm_size = 25usize;
    let mut max_generations = 50u32;
    let mut beta0 = 1.0;
    let mut gamma = None;
    let mut alpha = None;
    let mut attractiveness_exponent = 2.0;
    let mut eta = 5u32;
    let mut omega = 0.1;
    let mut head_probability = None;
    let mut max_rounds = 100_000u32;

    let mut seen: Vec<&str> = Vec::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(SimError::ConfigParse {
                line,
                message: format!("expected `key = value`, got `{trimmed}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let Some(&key) = KEYS.iter().find(|k| **k == key) else {
            return Err(SimError::ConfigParse {
                line,
                message: format!("unknown key `{key}`"),
            });
        };
        if seen.contains(&key) {
            return Err(SimError::ConfigParse {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
        seen.push(key);
        if value.is_empty() {
            return Err(SimError::ConfigParse {
                line,
                message: format!("key `{key}`: empty value"),
            });
        }
        match key {
            "side_length" => side_length = parse_number(line, key, value)?,
            "node_count" => node_count = parse_number(line, key, value)?,
            "base_station_x" => base_station_x = Some(parse_number(line, key, value)?),
            "base_station_y" => base_station_y = Some(parse_number(line, key, value)?),
            "cluster_fraction" => cluster_fraction = parse_number(line, key, value)?,
            "energy_mode" => energy_mode = parse_mode(line, value)?,
            "initial_energy_j" => initial_energy_j = parse_number(line, key, value)?,
            "payload_bits" => payload_bits = parse_number(line, key, value)?,
            "e_elec_j" => e_elec_j = parse_number(line, key, value)?,
            "e_da_j" => e_da_j = parse_number(line, key, value)?,
            "eps_fs_j" => eps_fs_j = parse_number(line, key, value)?,
            "eps_mp_j" => eps_mp_j = parse_number(line, key, value)?,
            "beta" => beta = parse_number(line, key, value)?,
            "swarm_size" => swarm_size = parse_number(line, key, value)?,
            "max_generations" => max_generations = parse_number(line, key, value)?,
            "beta0" => beta0 = parse_number(line, key, value)?,
            "gamma" => gamma = Some(parse_number(line, key, value)?),
            "alpha" => alpha = Some(parse_number(line, key, value)?),
            "attractiveness_exponent" => {
                attractiveness_exponent = parse_number(line, key, value)?
            }
            "eta" => eta = parse_number(line, key, value)?,
            "omega" => omega = parse_number(line, key, value)?,
            "head_probability" => head_probability = Some(parse_number(line, key, value)?),
            "max_rounds" => max_rounds = parse_number(line, key, value)?,
            _ => unreachable!("key list covers every match arm"),
        }
    }

    Ok(SimConfig {
        side_length,
        node_count,
        base_station_x: base_station_x.unwrap_or(side_length / 2.0),
        base_station_y: base_station_y.unwrap_or(side_length / 2.0),
        cluster_fraction,
        energy_mode,
        initial_energy_j,
        payload_bits,
        e_elec_j,
        e_da_j,
        eps_fs_j,
        eps_mp_j,
        beta,
        swarm_size,
        max_generations,
        beta0,
        gamma: gamma.unwrap_or(1.0 / (side_length * side_length)),
        alpha: alpha.unwrap_or(0.05 * side_length),
        attractiveness_exponent,
        eta,
        omega,
        head_probability: head_probability.unwrap_or(cluster_fraction),
        max_rounds,
    })
}

impl SimConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        parse_config(&std::fs::read_to_string(path)?)
    }

    /// Emit every resolved key. Parsing the dump reproduces this config.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let f = format_value;
        let _ = writeln!(out, "side_length = {}", f(self.side_length));
        let _ = writeln!(out, "node_count = {}", self.node_count);
        let _ = writeln!(out, "base_station_x = {}", f(self.base_station_x));
        let _ = writeln!(out, "base_station_y = {}", f(self.base_station_y));
        let _ = writeln!(out, "cluster_fraction = {}", f(self.cluster_fraction));
        let _ = writeln!(out, "energy_mode = {}", mode_name(self.energy_mode));
        let _ = writeln!(out, "initial_energy_j = {}", f(self.initial_energy_j));
        let _ = writeln!(out, "payload_bits = {}", self.payload_bits);
        let _ = writeln!(out, "e_elec_j = {}", f(self.e_elec_j));
        let _ = writeln!(out, "e_da_j = {}", f(self.e_da_j));
        let _ = writeln!(out, "eps_fs_j = {}", f(self.eps_fs_j));
        let _ = writeln!(out, "eps_mp_j = {}", f(self.eps_mp_j));
        let _ = writeln!(out, "beta = {}", f(self.beta));
        let _ = writeln!(out, "swarm_size = {}", self.swarm_size);
        let _ = writeln!(out, "max_generations = {}", self.max_generations);
        let _ = writeln!(out, "beta0 = {}", f(self.beta0));
        let _ = writeln!(out, "gamma = {}", f(self.gamma));
        let _ = writeln!(out, "alpha = {}", f(self.alpha));
        let _ = writeln!(out, "attractiveness_exponent = {}", f(self.attractiveness_exponent));
        let _ = writeln!(out, "eta = {}", self.eta);
        let _ = writeln!(out, "omega = {}", f(self.omega));
        let _ = writeln!(out, "head_probability = {}", f(self.head_probability));
        let _ = writeln!(out, "max_rounds = {}", self.max_rounds);
        out
    }

    pub fn field(&self) -> FieldConfig {
        FieldConfig {
            side_length: self.side_length,
            node_count: self.node_count,
            base_station: Point::new(self.base_station_x, self.base_station_y),
            cluster_fraction: self.cluster_fraction,
            energy_mode: self.energy_mode,
            initial_energy: self.initial_energy_j,
        }
    }

    pub fn radio(&self) -> Result<RadioParams> {
        RadioParams::new(
            self.e_elec_j,
            self.e_da_j,
            self.eps_fs_j,
            self.eps_mp_j,
            self.payload_bits,
        )
    }

    pub fn weights(&self) -> Result<CostWeights> {
        CostWeights::new(self.beta)
    }

    pub fn optimizer(&self) -> OptimizerParams {
        OptimizerParams {
            swarm_size: self.swarm_size,
            max_generations: self.max_generations,
            beta0: self.beta0,
            gamma: self.gamma,
            alpha: self.alpha,
            attractiveness_exponent: self.attractiveness_exponent,
        }
    }

    pub fn jumper(&self) -> JumperParams {
        JumperParams {
            eta: self.eta,
            omega: self.omega,
        }
    }

    /// Check every derived parameter set in one place.
    pub fn validate(&self) -> Result<()> {
        self.field().validate()?;
        self.radio()?;
        self.weights()?;
        self.optimizer().validate()?;
        self.jumper().validate()?;
        LeachElection::new(self.head_probability, self.node_count)?;
        if self.max_rounds == 0 {
            return Err(SimError::InvalidParameter {
                name: "max_rounds",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}
