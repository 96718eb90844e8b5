//! Firefly search over candidate cluster-head sets.
//!
//! A firefly is a point in `[0, side]^2K` encoding K tentative head
//! locations `(x1, y1, ..., xK, yK)`. Each generation the swarm is snapped
//! to concrete eligible nodes, scored with the clustering cost, and then
//! every firefly drifts toward each brighter one. Brightness comparisons
//! within a movement pass use the values from the last evaluation, while
//! positions are read live.

use crate::cost::{assign_members, cost, CostWeights};
use crate::error::{Result, SimError};
use crate::jumper::{JumperParams, StatusTable};
use crate::network::{Node, NodeId};
use crate::rng::SimRng;
use rand::seq::IndexedRandom;
use rand::Rng;

/// Swarm tuning knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerParams {
    pub swarm_size: usize,
    pub max_generations: u32,
    /// Attractiveness at zero distance.
    pub beta0: f64,
    /// Light absorption coefficient.
    pub gamma: f64,
    /// Scale of the uniform random step added to every move.
    pub alpha: f64,
    /// Exponent on distance in [`OptimizerParams::attractiveness`]. The
    /// movement update always attenuates by squared distance.
    pub attractiveness_exponent: f64,
}

impl OptimizerParams {
    /// Defaults scaled to a square field: `gamma = 1 / side^2` keeps the
    /// attenuation meaningful across the diagonal and `alpha = 0.05 * side`
    /// keeps the random walk a few meters wide.
    pub fn for_field(side_length: f64) -> Self {
        Self {
            swarm_size: 25,
            max_generations: 50,
            beta0: 1.0,
            gamma: 1.0 / (side_length * side_length),
            alpha: 0.05 * side_length,
            attractiveness_exponent: 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.swarm_size == 0 {
            return Err(SimError::InvalidParameter {
                name: "swarm_size",
                reason: "must be at least 1".into(),
            });
        }
        if self.max_generations == 0 {
            return Err(SimError::InvalidParameter {
                name: "max_generations",
                reason: "must be at least 1".into(),
            });
        }
        for (name, value) in [
            ("beta0", self.beta0),
            ("gamma", self.gamma),
            ("alpha", self.alpha),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(SimError::InvalidParameter {
                    name,
                    reason: format!("must be finite and non-negative, got {value}"),
                });
            }
        }
        if !self.attractiveness_exponent.is_finite() || self.attractiveness_exponent <= 0.0 {
            return Err(SimError::InvalidParameter {
                name: "attractiveness_exponent",
                reason: format!("must be positive, got {}", self.attractiveness_exponent),
            });
        }
        Ok(())
    }

    /// `beta0 * exp(-gamma * r^m)`.
    pub fn attractiveness(&self, r: f64) -> f64 {
        self.beta0 * (-self.gamma * r.powf(self.attractiveness_exponent)).exp()
    }
}

/// Brightness of a solution: `1 / (1 + cost)`, so cheaper is brighter.
pub fn brightness(cost: f64) -> f64 {
    1.0 / (1.0 + cost)
}

/// Euclidean distance between two firefly positions.
pub fn firefly_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// One movement update: pull `position` toward `target` by
/// `beta0 * exp(-gamma * r^2)` and add `alpha`-scaled uniform noise in
/// `[-0.5, 0.5]` per coordinate, clamping to the field.
pub fn move_towards(
    position: &mut [f64],
    target: &[f64],
    params: &OptimizerParams,
    side_length: f64,
    rng: &mut SimRng,
) {
    let r2: f64 = position
        .iter()
        .zip(target)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let pull = params.beta0 * (-params.gamma * r2).exp();
    for (coordinate, anchor) in position.iter_mut().zip(target) {
        let noise = rng.random_range(-0.5..=0.5);
        *coordinate =
            (*coordinate + pull * (anchor - *coordinate) + params.alpha * noise).clamp(0.0, side_length);
    }
}

/// Alive nodes with at least the mean residual energy of the alive set.
/// Falls back to every alive node when that leaves fewer than `k`.
pub fn eligible_candidates(nodes: &[Node], k: usize) -> Result<Vec<NodeId>> {
    let alive: Vec<&Node> = nodes.iter().filter(|n| n.alive).collect();
    if alive.len() < k {
        return Err(SimError::InfeasibleClusterCount {
            needed: k,
            available: alive.len(),
        });
    }
    let mean = alive.iter().map(|n| n.energy).sum::<f64>() / alive.len() as f64;
    let eligible: Vec<NodeId> = alive
        .iter()
        .filter(|n| n.energy >= mean)
        .map(|n| n.id)
        .collect();
    if eligible.len() >= k {
        Ok(eligible)
    } else {
        Ok(alive.iter().map(|n| n.id).collect())
    }
}

/// Position vector seeded on `k` distinct randomly chosen eligible nodes.
pub fn random_head_positions(
    nodes: &[Node],
    eligible: &[NodeId],
    k: usize,
    rng: &mut SimRng,
) -> Vec<f64> {
    let mut coordinates = Vec::with_capacity(2 * k);
    for id in eligible.choose_multiple(rng, k) {
        let p = nodes[id.0].position;
        coordinates.push(p.x);
        coordinates.push(p.y);
    }
    coordinates
}

/// Map each encoded `(x, y)` pair, in order, to the nearest eligible node
/// not already claimed by an earlier pair. Distance ties go to the lower
/// node id.
pub fn snap_to_nodes(position: &[f64], nodes: &[Node], eligible: &[NodeId]) -> Vec<NodeId> {
    let k = position.len() / 2;
    debug_assert!(eligible.len() >= k);
    let mut taken = vec![false; eligible.len()];
    let mut heads = Vec::with_capacity(k);
    for pair in 0..k {
        let x = position[2 * pair];
        let y = position[2 * pair + 1];
        let mut best = usize::MAX;
        let mut best_distance = f64::INFINITY;
        for (slot, id) in eligible.iter().enumerate() {
            if taken[slot] {
                continue;
            }
            let p = nodes[id.0].position;
            let d = (p.x - x) * (p.x - x) + (p.y - y) * (p.y - y);
            if d < best_distance {
                best_distance = d;
                best = slot;
            }
        }
        taken[best] = true;
        heads.push(eligible[best]);
    }
    heads
}

/// Outcome of one optimizer invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Optimized {
    /// Cheapest head set seen across all generations.
    pub head_ids: Vec<NodeId>,
    pub cost: f64,
    /// Best cost so far, recorded once per generation.
    pub trace: Vec<f64>,
    /// Hazard jumps taken (always zero without the jumper extension).
    pub jumps: u32,
}

/// Plain firefly optimizer.
#[derive(Clone, Debug)]
pub struct FireflyOptimizer {
    pub params: OptimizerParams,
    pub weights: CostWeights,
}

impl FireflyOptimizer {
    pub fn new(params: OptimizerParams, weights: CostWeights) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, weights })
    }

    /// Pick `k` heads from the alive nodes.
    pub fn optimize(
        &self,
        nodes: &[Node],
        k: usize,
        side_length: f64,
        rng: &mut SimRng,
    ) -> Result<Optimized> {
        self.run(nodes, k, side_length, rng, None)
    }

    pub(crate) fn run(
        &self,
        nodes: &[Node],
        k: usize,
        side_length: f64,
        rng: &mut SimRng,
        jumper: Option<&JumperParams>,
    ) -> Result<Optimized> {
        self.params.validate()?;
        if k == 0 {
            return Err(SimError::InvalidParameter {
                name: "cluster_count",
                reason: "must be at least 1".into(),
            });
        }
        let eligible = eligible_candidates(nodes, k)?;
        let s = self.params.swarm_size;
        let dims = 2 * k;

        let mut positions: Vec<Vec<f64>> = (0..s)
            .map(|_| random_head_positions(nodes, &eligible, k, rng))
            .collect();
        let mut heads: Vec<Vec<NodeId>> = vec![Vec::new(); s];
        let mut costs = vec![0.0f64; s];
        let mut intensity = vec![0.0f64; s];
        let mut table = StatusTable::new(s);

        let mut best_cost = f64::INFINITY;
        let mut best_heads = Vec::new();
        let mut trace = Vec::with_capacity(self.params.max_generations as usize);
        let mut jumps = 0u32;
        let mut target = vec![0.0f64; dims];

        for _generation in 0..self.params.max_generations {
            if let Some(policy) = jumper {
                let snapshot = table.snapshot();
                for i in 0..s {
                    if policy.is_hazard(&snapshot, i) {
                        positions[i] = random_head_positions(nodes, &eligible, k, rng);
                        table.reset_after_jump(i, snapshot.mean_qualification());
                        jumps += 1;
                    }
                }
            }

            for i in 0..s {
                let snapped = snap_to_nodes(&positions[i], nodes, &eligible);
                let clustering = assign_members(nodes, &snapped)?;
                let c = cost(&self.weights, &clustering, nodes)?;
                heads[i] = snapped;
                costs[i] = c;
                intensity[i] = brightness(c);
                table.record_fitness(i, intensity[i]);
            }
            table.mark_worst(&costs);

            for i in 0..s {
                if costs[i] < best_cost {
                    best_cost = costs[i];
                    best_heads = heads[i].clone();
                }
            }
            trace.push(best_cost);

            let stale = intensity.clone();
            for i in 0..s {
                for j in 0..s {
                    if stale[j] > stale[i] {
                        target.copy_from_slice(&positions[j]);
                        move_towards(&mut positions[i], &target, &self.params, side_length, rng);
                    }
                }
            }
        }

        Ok(Optimized {
            head_ids: best_heads,
            cost: best_cost,
            trace,
            jumps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Point;
    use crate::rng::{stream_rng, RngStream};
    use itertools::Itertools;

    fn node(id: usize, x: f64, y: f64, energy: f64) -> Node {
        Node {
            id: NodeId(id),
            position: Point::new(x, y),
            energy,
            initial_energy: 0.2,
            alive: energy > 0.0,
        }
    }

    fn params() -> OptimizerParams {
        OptimizerParams::for_field(100.0)
    }

    #[test]
    fn brightness_examples() {
        assert_eq!(brightness(0.0), 1.0);
        assert_eq!(brightness(1.0), 0.5);
        assert_eq!(brightness(4.0), 0.2);
        assert!(brightness(3.0) > brightness(7.0));
    }

    #[test]
    fn attractiveness_examples() {
        let p = OptimizerParams {
            gamma: 0.01,
            ..params()
        };
        assert!((p.attractiveness(10.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(p.attractiveness(0.0), p.beta0);
        let quartic = OptimizerParams {
            gamma: 0.01,
            attractiveness_exponent: 4.0,
            ..params()
        };
        assert!(quartic.attractiveness(10.0) < p.attractiveness(10.0));
    }

    #[test]
    fn firefly_distance_examples() {
        assert_eq!(firefly_distance(&[0.0, 0.0, 1.0, 1.0], &[1.0, 1.0, 0.0, 0.0]), 2.0);
        assert_eq!(firefly_distance(&[3.0, 4.0], &[3.0, 4.0]), 0.0);
        assert_eq!(firefly_distance(&[0.0, 0.0], &[3.0, 4.0]), 5.0);
    }

    #[test]
    fn move_towards_pure_pull() {
        let p = OptimizerParams {
            beta0: 1.0,
            gamma: 1.0,
            alpha: 0.0,
            ..params()
        };
        let mut rng = stream_rng(0, RngStream::Optimizer);
        let mut position = vec![0.0, 0.0];
        move_towards(&mut position, &[1.0, 0.0], &p, 100.0, &mut rng);
        assert!((position[0] - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(position[1], 0.0);
    }

    #[test]
    fn move_attenuates_by_squared_distance_even_with_other_exponent() {
        let p = OptimizerParams {
            beta0: 1.0,
            gamma: 0.1,
            alpha: 0.0,
            attractiveness_exponent: 4.0,
            ..params()
        };
        let mut rng = stream_rng(0, RngStream::Optimizer);
        let mut position = vec![0.0, 0.0];
        move_towards(&mut position, &[2.0, 0.0], &p, 100.0, &mut rng);
        let pull = (-0.1f64 * 4.0).exp();
        assert!((position[0] - 2.0 * pull).abs() < 1e-15);
    }

    #[test]
    fn moves_stay_inside_the_field() {
        let p = OptimizerParams {
            alpha: 50.0,
            ..OptimizerParams::for_field(10.0)
        };
        let mut rng = stream_rng(7, RngStream::Optimizer);
        let mut position = vec![9.5, 0.2, 5.0, 5.0];
        let target = vec![10.0, 0.0, 0.0, 10.0];
        for _ in 0..200 {
            move_towards(&mut position, &target, &p, 10.0, &mut rng);
            assert!(position.iter().all(|c| (0.0..=10.0).contains(c)));
        }
    }

    #[test]
    fn eligibility_filters_below_mean_energy() {
        // Mean is exactly 2.0; the boundary node counts as eligible.
        let nodes = vec![
            node(0, 0.0, 0.0, 1.0),
            node(1, 1.0, 0.0, 2.0),
            node(2, 2.0, 0.0, 3.0),
        ];
        assert_eq!(eligible_candidates(&nodes, 1).unwrap(), vec![NodeId(1), NodeId(2)]);
    }

    #[test]
    fn eligibility_falls_back_to_all_alive() {
        let nodes = vec![
            node(0, 0.0, 0.0, 0.1),
            node(1, 1.0, 0.0, 0.1),
            node(2, 2.0, 0.0, 0.4),
        ];
        // Only node 2 clears the mean, but two heads are needed.
        assert_eq!(
            eligible_candidates(&nodes, 2).unwrap(),
            vec![NodeId(0), NodeId(1), NodeId(2)]
        );
    }

    #[test]
    fn eligibility_rejects_oversized_head_count() {
        let nodes = vec![node(0, 0.0, 0.0, 0.2), node(1, 1.0, 0.0, 0.0)];
        assert!(matches!(
            eligible_candidates(&nodes, 2),
            Err(SimError::InfeasibleClusterCount { needed: 2, available: 1 })
        ));
    }

    #[test]
    fn snap_picks_nearest_untaken_node() {
        let nodes = vec![node(0, 0.0, 0.0, 0.2), node(1, 10.0, 0.0, 0.2)];
        let eligible = vec![NodeId(0), NodeId(1)];
        let heads = snap_to_nodes(&[9.0, 0.0, 8.0, 0.0], &nodes, &eligible);
        // The first pair claims node 1; the second must settle for node 0.
        assert_eq!(heads, vec![NodeId(1), NodeId(0)]);
    }

    #[test]
    fn snap_breaks_distance_ties_toward_lower_id() {
        let nodes = vec![node(0, 0.0, 0.0, 0.2), node(1, 2.0, 0.0, 0.2)];
        let eligible = vec![NodeId(0), NodeId(1)];
        let heads = snap_to_nodes(&[1.0, 0.0, 1.0, 0.0], &nodes, &eligible);
        assert_eq!(heads, vec![NodeId(0), NodeId(1)]);
    }

    #[test]
    fn snap_exhausts_eligible_set_when_counts_match() {
        let nodes = vec![
            node(0, 0.0, 0.0, 0.2),
            node(1, 5.0, 5.0, 0.2),
            node(2, 9.0, 9.0, 0.2),
        ];
        let eligible = vec![NodeId(0), NodeId(1), NodeId(2)];
        let mut heads = snap_to_nodes(&[4.0, 4.0, 4.5, 4.5, 5.0, 5.0], &nodes, &eligible);
        heads.sort_by_key(|h| h.0);
        assert_eq!(heads, eligible);
    }

    fn grid_nodes(n: usize) -> Vec<Node> {
        (0..n)
            .map(|i| node(i, (i % 3) as f64 * 40.0 + 5.0, (i / 3) as f64 * 40.0 + 5.0, 0.2))
            .collect()
    }

    #[test]
    fn optimize_returns_distinct_alive_heads() {
        let nodes = grid_nodes(6);
        let optimizer = FireflyOptimizer::new(params(), CostWeights::default()).unwrap();
        let mut rng = stream_rng(3, RngStream::Optimizer);
        let result = optimizer.optimize(&nodes, 2, 100.0, &mut rng).unwrap();
        assert_eq!(result.head_ids.len(), 2);
        assert_ne!(result.head_ids[0], result.head_ids[1]);
        assert!(result.cost.is_finite());
        assert_eq!(result.jumps, 0);
        assert_eq!(result.trace.len(), 50);
    }

    #[test]
    fn optimize_is_deterministic_per_seed() {
        let nodes = grid_nodes(9);
        let optimizer = FireflyOptimizer::new(params(), CostWeights::default()).unwrap();
        let mut a = stream_rng(11, RngStream::Optimizer);
        let mut b = stream_rng(11, RngStream::Optimizer);
        let first = optimizer.optimize(&nodes, 3, 100.0, &mut a).unwrap();
        let second = optimizer.optimize(&nodes, 3, 100.0, &mut b).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn trace_is_non_increasing() {
        let nodes = grid_nodes(9);
        let optimizer = FireflyOptimizer::new(params(), CostWeights::default()).unwrap();
        for seed in 0..10u64 {
            let mut rng = stream_rng(seed, RngStream::Optimizer);
            let result = optimizer.optimize(&nodes, 3, 100.0, &mut rng).unwrap();
            for window in result.trace.windows(2) {
                assert!(window[1] <= window[0], "seed {seed}");
            }
        }
    }

    #[test]
    fn optimize_matches_exhaustive_search_on_tiny_instance() {
        let nodes = grid_nodes(6);
        let weights = CostWeights::default();
        let exhaustive = (0..nodes.len())
            .map(NodeId)
            .combinations(2)
            .map(|heads| {
                let clustering = assign_members(&nodes, &heads).unwrap();
                cost(&weights, &clustering, &nodes).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        let optimizer = FireflyOptimizer::new(
            OptimizerParams {
                swarm_size: 10,
                max_generations: 60,
                ..params()
            },
            weights,
        )
        .unwrap();
        // The search is stochastic and the grid's symmetry breeds tied
        // costs, so demand a high hit rate rather than perfection.
        let mut hits = 0;
        for seed in 0..10u64 {
            let mut rng = stream_rng(seed, RngStream::Optimizer);
            let result = optimizer.optimize(&nodes, 2, 100.0, &mut rng).unwrap();
            if (result.cost - exhaustive).abs() < 1e-12 {
                hits += 1;
            }
        }
        assert!(hits >= 9, "matched the exhaustive minimum on only {hits}/10 seeds");
    }

    #[test]
    fn params_validation() {
        assert!(params().validate().is_ok());
        assert!(OptimizerParams { swarm_size: 0, ..params() }.validate().is_err());
        assert!(OptimizerParams { max_generations: 0, ..params() }.validate().is_err());
        assert!(OptimizerParams { beta0: -1.0, ..params() }.validate().is_err());
        assert!(OptimizerParams { gamma: f64::NAN, ..params() }.validate().is_err());
        assert!(OptimizerParams { attractiveness_exponent: 0.0, ..params() }.validate().is_err());
    }
}
