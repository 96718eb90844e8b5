//! Round-driven network lifetime simulation.
//!
//! Each round elects cluster heads under the chosen protocol, then plays
//! one data frame: members transmit to their head, heads receive,
//! aggregate, and forward to the base station. Charges are computed from
//! the start-of-round state and applied simultaneously, so a node that
//! dies mid-round still costs its head the reception energy.

use crate::config::SimConfig;
use crate::cost::assign_members;
use crate::error::{Result, SimError};
use crate::firefly::FireflyOptimizer;
use crate::jumper::JumperFireflyOptimizer;
use crate::leach::LeachElection;
use crate::network::{cluster_count, deploy, Node, NodeId, Point};
use crate::radio::RadioParams;
use crate::rng::{stream_rng, RngStream, SimRng};
use std::fmt;
use std::str::FromStr;

/// Cluster-head selection strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Protocol {
    Leach,
    Ffa,
    Jfa,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [Protocol::Leach, Protocol::Ffa, Protocol::Jfa];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Leach => "leach",
            Protocol::Ffa => "ffa",
            Protocol::Jfa => "jfa",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "leach" => Ok(Protocol::Leach),
            "ffa" => Ok(Protocol::Ffa),
            "jfa" => Ok(Protocol::Jfa),
            other => Err(SimError::InvalidParameter {
                name: "protocol",
                reason: format!("expected leach, ffa, or jfa, got `{other}`"),
            }),
        }
    }
}

/// Outcome of one completed round.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundStats {
    /// Round number, starting at 1.
    pub round: u32,
    /// Nodes still alive after the data frame.
    pub alive: usize,
    /// Residual energy summed over the network after the frame, joules.
    pub total_energy_j: f64,
    /// Elected heads in election order. Empty on a direct-to-base round.
    pub head_ids: Vec<NodeId>,
    /// Optimizer hazard jumps this round; zero under LEACH.
    pub jumps: u32,
    /// Energy each node actually dissipated this round, joules, indexed
    /// by node id. Capped at residual energy for nodes that die.
    pub per_node_dissipation: Vec<f64>,
}

impl RoundStats {
    /// Energy dissipated across the whole network this round, joules.
    pub fn dissipated_j(&self) -> f64 {
        self.per_node_dissipation.iter().sum()
    }
}

/// Rounds survived until the first, half, and last node death.
/// Zero means the milestone was not reached within the round budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LifetimeSummary {
    pub fnd: u32,
    pub hnd: u32,
    pub lnd: u32,
}

/// A finished simulation: every round plus the lifetime milestones.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationRun {
    pub protocol: Protocol,
    pub seed: u64,
    pub rounds: Vec<RoundStats>,
    pub summary: LifetimeSummary,
    /// Total energy deployed at round zero, joules.
    pub initial_energy_j: f64,
}

enum Selector {
    Leach(LeachElection),
    Firefly(FireflyOptimizer),
    Jumper(JumperFireflyOptimizer),
}

/// Steppable simulation state.
pub struct Simulation {
    nodes: Vec<Node>,
    radio: RadioParams,
    base_station: Point,
    side_length: f64,
    cluster_fraction: f64,
    max_rounds: u32,
    round: u32,
    selector: Selector,
    election_rng: SimRng,
    optimizer_rng: SimRng,
    protocol: Protocol,
    seed: u64,
    last_trace: Vec<f64>,
}

impl Simulation {
    /// Deploy the field and prepare the protocol. The same `(config,
    /// protocol, seed)` triple always produces the same run; the
    /// deployment depends only on `(config, seed)`, so protocols compete
    /// on identical networks.
    pub fn new(config: &SimConfig, protocol: Protocol, seed: u64) -> Result<Self> {
        config.validate()?;
        let field = config.field();
        let nodes = deploy(&field, seed)?;
        let weights = config.weights()?;
        let selector = match protocol {
            Protocol::Leach => {
                Selector::Leach(LeachElection::new(config.head_probability, nodes.len())?)
            }
            Protocol::Ffa => Selector::Firefly(FireflyOptimizer::new(config.optimizer(), weights)?),
            Protocol::Jfa => Selector::Jumper(JumperFireflyOptimizer::new(
                config.optimizer(),
                weights,
                config.jumper(),
            )?),
        };
        Ok(Self {
            nodes,
            radio: config.radio()?,
            base_station: field.base_station,
            side_length: field.side_length,
            cluster_fraction: field.cluster_fraction,
            max_rounds: config.max_rounds,
            round: 0,
            selector,
            election_rng: stream_rng(seed, RngStream::Election),
            optimizer_rng: stream_rng(seed, RngStream::Optimizer),
            protocol,
            seed,
            last_trace: Vec::new(),
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rounds_completed(&self) -> u32 {
        self.round
    }

    /// Per-generation best-cost trace from the most recent optimizer
    /// election. Empty before the first round and under LEACH.
    pub fn last_trace(&self) -> &[f64] {
        &self.last_trace
    }

    /// Play one round. Returns `None` once the network is dead or the
    /// round budget is spent.
    pub fn step(&mut self) -> Result<Option<RoundStats>> {
        if self.round >= self.max_rounds {
            return Ok(None);
        }
        let alive = self.nodes.iter().filter(|n| n.alive).count();
        if alive == 0 {
            return Ok(None);
        }

        let (head_ids, jumps) = match &mut self.selector {
            Selector::Leach(election) => {
                self.last_trace.clear();
                (election.elect(&self.nodes, self.round, &mut self.election_rng)?, 0)
            }
            Selector::Firefly(optimizer) => {
                let k = cluster_count(alive, self.cluster_fraction);
                let best =
                    optimizer.optimize(&self.nodes, k, self.side_length, &mut self.optimizer_rng)?;
                self.last_trace = best.trace;
                (best.head_ids, best.jumps)
            }
            Selector::Jumper(optimizer) => {
                let k = cluster_count(alive, self.cluster_fraction);
                let best =
                    optimizer.optimize(&self.nodes, k, self.side_length, &mut self.optimizer_rng)?;
                self.last_trace = best.trace;
                (best.head_ids, best.jumps)
            }
        };

        let per_node_dissipation = self.data_frame(&head_ids)?;
        self.round += 1;
        Ok(Some(RoundStats {
            round: self.round,
            alive: self.nodes.iter().filter(|n| n.alive).count(),
            total_energy_j: self.nodes.iter().map(|n| n.energy).sum(),
            head_ids,
            jumps,
            per_node_dissipation,
        }))
    }

    /// Charge every alive node for one data frame. With no heads (a LEACH
    /// round can elect nobody) each node reports straight to the base
    /// station instead.
    fn data_frame(&mut self, head_ids: &[NodeId]) -> Result<Vec<f64>> {
        let payload = self.radio.payload_bits;
        let mut charges = vec![0.0f64; self.nodes.len()];
        if head_ids.is_empty() {
            for node in self.nodes.iter().filter(|n| n.alive) {
                charges[node.id.0] =
                    self.radio.tx_energy(payload, node.position.distance(self.base_station));
            }
        } else {
            let clustering = assign_members(&self.nodes, head_ids)?;
            let member_counts = clustering.member_counts();
            for node in self.nodes.iter().filter(|n| n.alive) {
                let Some(index) = clustering.head_index_of(node.id) else {
                    continue;
                };
                let head = clustering.head_ids()[index];
                charges[node.id.0] = if head == node.id {
                    self.radio.ch_round_energy(
                        member_counts[index],
                        node.position.distance(self.base_station),
                    )
                } else {
                    self.radio
                        .tx_energy(payload, node.position.distance(self.nodes[head.0].position))
                };
            }
        }
        for (node, charge) in self.nodes.iter_mut().zip(charges.iter_mut()) {
            *charge = if *charge > 0.0 { node.drain(*charge) } else { 0.0 };
        }
        Ok(charges)
    }

    /// Step until the network dies or the round budget runs out.
    pub fn run(mut self) -> Result<SimulationRun> {
        let node_count = self.nodes.len();
        let initial_energy_j: f64 = self.nodes.iter().map(|n| n.initial_energy).sum();
        let mut rounds = Vec::new();
        let mut summary = LifetimeSummary { fnd: 0, hnd: 0, lnd: 0 };
        while let Some(stats) = self.step()? {
            let dead = node_count - stats.alive;
            if summary.fnd == 0 && dead >= 1 {
                summary.fnd = stats.round;
            }
            if summary.hnd == 0 && 2 * dead >= node_count {
                summary.hnd = stats.round;
            }
            if summary.lnd == 0 && stats.alive == 0 {
                summary.lnd = stats.round;
            }
            rounds.push(stats);
        }
        Ok(SimulationRun {
            protocol: self.protocol,
            seed: self.seed,
            rounds,
            summary,
            initial_energy_j,
        })
    }
}

/// Deploy, run, and summarize in one call.
pub fn simulate(config: &SimConfig, protocol: Protocol, seed: u64) -> Result<SimulationRun> {
    Simulation::new(config, protocol, seed)?.run()
}
