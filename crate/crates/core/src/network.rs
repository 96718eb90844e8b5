//! Sensor field: node population, deployment, and base-station placement.

use std::fmt;

use rand::Rng;

use crate::error::{Result, SimError};
use crate::rng::{stream_rng, RngStream};

/// Stable, dense node identifier (`0..N-1` for the simulation's lifetime).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point in the field plane, meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// How initial node energies are assigned at deployment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyMode {
    /// Every node starts with exactly `initial_energy`.
    Homogeneous,
    /// Initial energies drawn uniformly from `[initial_energy, 2 * initial_energy]`.
    Heterogeneous,
}

/// One sensor node. Dead nodes stay in the list with `alive = false` so
/// ids remain dense.
#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub position: Point,
    pub energy: f64,
    pub initial_energy: f64,
    pub alive: bool,
}

impl Node {
    /// Deduct up to `amount` joules, flooring at zero. A node that hits
    /// zero dies. Returns the energy actually drained.
    pub fn drain(&mut self, amount: f64) -> f64 {
        let spent = amount.min(self.energy);
        self.energy -= spent;
        if self.energy <= 0.0 {
            self.energy = 0.0;
            self.alive = false;
        }
        spent
    }
}

/// Field geometry and node population settings.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldConfig {
    /// Side length M of the square deployment region, meters.
    pub side_length: f64,
    /// Number of deployed nodes.
    pub node_count: usize,
    /// Base-station position; may lie inside or outside the field.
    pub base_station: Point,
    /// Desired cluster heads as a fraction of alive nodes, in (0, 1].
    pub cluster_fraction: f64,
    pub energy_mode: EnergyMode,
    /// Baseline initial energy E0, joules.
    pub initial_energy: f64,
}

impl FieldConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.side_length > 0.0) {
            return Err(SimError::InvalidParameter {
                name: "side_length",
                reason: format!("must be > 0, got {}", self.side_length),
            });
        }
        if self.node_count == 0 {
            return Err(SimError::InvalidParameter {
                name: "node_count",
                reason: "must be >= 1".into(),
            });
        }
        if !(self.cluster_fraction > 0.0 && self.cluster_fraction <= 1.0) {
            return Err(SimError::InvalidParameter {
                name: "cluster_fraction",
                reason: format!("must be in (0, 1], got {}", self.cluster_fraction),
            });
        }
        if !(self.initial_energy > 0.0) {
            return Err(SimError::InvalidParameter {
                name: "initial_energy",
                reason: format!("must be > 0, got {}", self.initial_energy),
            });
        }
        if !self.base_station.x.is_finite() || !self.base_station.y.is_finite() {
            return Err(SimError::InvalidParameter {
                name: "base_station",
                reason: "coordinates must be finite".into(),
            });
        }
        Ok(())
    }
}

/// Deploy `node_count` nodes uniformly over the `[0, M]^2` field.
///
/// Pure in `(config, seed)`: the same inputs produce a bitwise-identical
/// node list.
pub fn deploy(config: &FieldConfig, seed: u64) -> Result<Vec<Node>> {
    config.validate()?;
    let mut rng = stream_rng(seed, RngStream::Deployment);
    let mut nodes = Vec::with_capacity(config.node_count);
    for index in 0..config.node_count {
        let x = rng.random_range(0.0..=config.side_length);
        let y = rng.random_range(0.0..=config.side_length);
        let energy = match config.energy_mode {
            EnergyMode::Homogeneous => config.initial_energy,
            EnergyMode::Heterogeneous => {
                rng.random_range(config.initial_energy..=2.0 * config.initial_energy)
            }
        };
        nodes.push(Node {
            id: NodeId(index),
            position: Point::new(x, y),
            energy,
            initial_energy: energy,
            alive: energy > 0.0,
        });
    }
    Ok(nodes)
}

/// Number of cluster heads to select for `alive` nodes:
/// `max(1, round(cluster_fraction * alive))`, or 0 for an empty network.
pub fn cluster_count(alive: usize, cluster_fraction: f64) -> usize {
    if alive == 0 {
        return 0;
    }
    ((cluster_fraction * alive as f64).round() as usize).max(1)
}
