//! Jumper extension for the firefly search.
//!
//! Tracks per-firefly bookkeeping across generations: the latest fitness,
//! how often the firefly scored worst in the swarm, and a qualification
//! value that accumulates fitness over time. A firefly that keeps scoring
//! worst while its qualification lags the swarm is declared hazardous and
//! jumps to a fresh random position instead of crawling out of its rut.

use crate::cost::CostWeights;
use crate::error::Result;
use crate::firefly::{FireflyOptimizer, Optimized, OptimizerParams};
use crate::network::Node;
use crate::rng::SimRng;

/// Hazard thresholds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumperParams {
    /// A firefly must have scored worst more than this many times.
    pub eta: u32,
    /// Required qualification shortfall below the swarm mean.
    pub omega: f64,
}

impl Default for JumperParams {
    fn default() -> Self {
        Self { eta: 5, omega: 0.1 }
    }
}

impl JumperParams {
    pub fn validate(&self) -> Result<()> {
        if !self.omega.is_finite() || self.omega < 0.0 {
            return Err(crate::error::SimError::InvalidParameter {
                name: "omega",
                reason: format!("must be finite and non-negative, got {}", self.omega),
            });
        }
        Ok(())
    }

    /// A firefly is hazardous when it holds the swarm's worst-count record
    /// beyond `eta` and its qualification is both the swarm minimum and
    /// more than `omega` below the swarm mean.
    pub fn is_hazard(&self, snapshot: &StatusSnapshot, index: usize) -> bool {
        let worst = snapshot.worst[index];
        let qualification = snapshot.qualification[index];
        worst == snapshot.max_worst()
            && worst > self.eta
            && qualification == snapshot.min_qualification()
            && qualification < snapshot.mean_qualification() - self.omega
    }
}

/// Per-firefly history maintained during a run.
#[derive(Clone, Debug)]
pub struct StatusTable {
    fitness: Vec<f64>,
    worst: Vec<u32>,
    qualification: Vec<f64>,
}

impl StatusTable {
    pub fn new(size: usize) -> Self {
        Self {
            fitness: vec![0.0; size],
            worst: vec![0; size],
            qualification: vec![0.0; size],
        }
    }

    /// Store the latest fitness and fold it into the qualification sum.
    pub fn record_fitness(&mut self, index: usize, fitness: f64) {
        self.fitness[index] = fitness;
        self.qualification[index] += fitness;
    }

    /// Bump the worst counter of every firefly tied for the highest cost.
    pub fn mark_worst(&mut self, costs: &[f64]) {
        debug_assert_eq!(costs.len(), self.worst.len());
        let max = costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (counter, &c) in self.worst.iter_mut().zip(costs) {
            if c == max {
                *counter += 1;
            }
        }
    }

    /// Fresh start after a jump: the worst streak is forgiven and the
    /// qualification is reset to the given (pre-jump swarm mean) value.
    pub fn reset_after_jump(&mut self, index: usize, qualification: f64) {
        self.worst[index] = 0;
        self.qualification[index] = qualification;
    }

    /// Frozen copy used to judge every hazard in one generation, so one
    /// firefly's jump cannot cascade into another's eligibility.
    pub fn snapshot(&self) -> StatusSnapshot {
        StatusSnapshot {
            worst: self.worst.clone(),
            qualification: self.qualification.clone(),
        }
    }

    pub fn fitness(&self) -> &[f64] {
        &self.fitness
    }

    pub fn worst(&self) -> &[u32] {
        &self.worst
    }

    pub fn qualification(&self) -> &[f64] {
        &self.qualification
    }
}

/// Immutable view of the table at the top of a generation.
#[derive(Clone, Debug)]
pub struct StatusSnapshot {
    worst: Vec<u32>,
    qualification: Vec<f64>,
}

impl StatusSnapshot {
    pub fn max_worst(&self) -> u32 {
        self.worst.iter().copied().max().unwrap_or(0)
    }

    pub fn min_qualification(&self) -> f64 {
        self.qualification.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn mean_qualification(&self) -> f64 {
        if self.qualification.is_empty() {
            return 0.0;
        }
        self.qualification.iter().sum::<f64>() / self.qualification.len() as f64
    }
}

/// Firefly optimizer with the hazard-jump extension.
#[derive(Clone, Debug)]
pub struct JumperFireflyOptimizer {
    pub firefly: FireflyOptimizer,
    pub jumper: JumperParams,
}

impl JumperFireflyOptimizer {
    pub fn new(params: OptimizerParams, weights: CostWeights, jumper: JumperParams) -> Result<Self> {
        jumper.validate()?;
        Ok(Self {
            firefly: FireflyOptimizer::new(params, weights)?,
            jumper,
        })
    }

    pub fn optimize(
        &self,
        nodes: &[Node],
        k: usize,
        side_length: f64,
        rng: &mut SimRng,
    ) -> Result<Optimized> {
        self.jumper.validate()?;
        self.firefly.run(nodes, k, side_length, rng, Some(&self.jumper))
    }
}
