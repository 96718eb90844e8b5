//! Randomized rotating cluster-head election.
//!
//! Each node volunteers with a threshold probability that rises as an
//! epoch progresses, guaranteeing every node that survives an epoch of
//! `round(1 / p)` rounds serves exactly once before the eligible group
//! refills.

use crate::error::{Result, SimError};
use crate::network::{Node, NodeId};
use crate::rng::SimRng;
use rand::Rng;

fn validate_probability(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(SimError::InvalidParameter {
            name: "head_probability",
            reason: format!("must be in (0, 1), got {p}"),
        });
    }
    Ok(())
}

/// Election threshold for a node still in the eligible group:
/// `p / (1 - p * (round mod round(1/p)))`.
pub fn threshold(p: f64, round: u32) -> Result<f64> {
    validate_probability(p)?;
    let epoch_length = (1.0 / p).round() as u32;
    let position = round % epoch_length;
    let denominator = 1.0 - p * position as f64;
    if denominator <= 0.0 {
        return Err(SimError::DegenerateThreshold { round });
    }
    Ok(p / denominator)
}

/// Stateful election tracking which nodes have already served this epoch.
#[derive(Clone, Debug)]
pub struct LeachElection {
    p: f64,
    epoch_length: u32,
    in_group: Vec<bool>,
}

impl LeachElection {
    pub fn new(p: f64, node_count: usize) -> Result<Self> {
        validate_probability(p)?;
        let epoch_length = (1.0 / p).round() as u32;
        debug_assert!(epoch_length >= 1);
        Ok(Self {
            p,
            epoch_length,
            in_group: vec![true; node_count],
        })
    }

    /// Rounds between refills of the eligible group.
    pub fn epoch_length(&self) -> u32 {
        self.epoch_length
    }

    /// Draw heads for `round`. Rounds must be fed in order from zero; the
    /// eligible group refills with the alive nodes whenever a new epoch
    /// starts, and a node leaves it by being elected or by dying.
    pub fn elect(&mut self, nodes: &[Node], round: u32, rng: &mut SimRng) -> Result<Vec<NodeId>> {
        debug_assert_eq!(nodes.len(), self.in_group.len());
        if round % self.epoch_length == 0 {
            for node in nodes {
                self.in_group[node.id.0] = node.alive;
            }
        }
        let t = threshold(self.p, round)?;
        let mut heads = Vec::new();
        for node in nodes {
            if !node.alive {
                self.in_group[node.id.0] = false;
                continue;
            }
            if !self.in_group[node.id.0] {
                continue;
            }
            if rng.random::<f64>() < t {
                heads.push(node.id);
                self.in_group[node.id.0] = false;
            }
        }
        Ok(heads)
    }
}
