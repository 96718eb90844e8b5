//! Deterministic lifetime simulator for clustered wireless sensor
//! networks.
//!
//! Nodes are scattered over a square field and report to a base station
//! through elected cluster heads, paying a first-order radio energy cost
//! per frame. Three head-selection protocols are provided: randomized
//! rotation (`leach`), a firefly swarm minimizing a clustering cost
//! (`ffa`), and the same swarm with a hazard-jump escape for stagnating
//! fireflies (`jfa`). Every run is a pure function of `(config, protocol,
//! seed)`.
//!
//! ```
//! use wsnsim::{simulate, Protocol, SimConfig};
//!
//! let mut config = SimConfig::default();
//! config.node_count = 20;
//! config.side_length = 60.0;
//! config.initial_energy_j = 0.01;
//! let run = simulate(&config, Protocol::Jfa, 42).unwrap();
//! assert!(run.summary.lnd >= run.summary.fnd);
//! ```

pub mod config;
pub mod cost;
pub mod engine;
pub mod error;
pub mod firefly;
pub mod jumper;
pub mod leach;
pub mod network;
pub mod oracle;
pub mod radio;
pub mod report;
pub mod rng;

pub use config::{parse_config, SimConfig};
pub use cost::CostWeights;
pub use engine::{simulate, LifetimeSummary, Protocol, RoundStats, Simulation, SimulationRun};
pub use error::{Result, SimError};
pub use firefly::{FireflyOptimizer, Optimized, OptimizerParams};
pub use jumper::{JumperFireflyOptimizer, JumperParams};
pub use network::{EnergyMode, FieldConfig, Node, NodeId, Point};
pub use radio::RadioParams;
