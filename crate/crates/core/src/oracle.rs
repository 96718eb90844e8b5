//! Exhaustive reference search over head sets.
//!
//! Enumerates every k-combination of the eligible candidates and scores
//! it with the same clustering cost the optimizers minimize, which makes
//! small instances checkable against ground truth. Refuses instances
//! whose combination count would take unreasonably long.

use crate::cost::{assign_members, cost, CostWeights};
use crate::error::{Result, SimError};
use crate::firefly::eligible_candidates;
use crate::network::{Node, NodeId};
use itertools::Itertools;

/// Largest combination count the search will attempt.
pub const COMBINATION_LIMIT: u128 = 10_000_000;

/// Binomial coefficient without overflow for any inputs below the limit.
pub fn combination_count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut count: u128 = 1;
    for i in 0..k {
        count = count.saturating_mul(n - i) / (i + 1);
    }
    count
}

/// Globally cheapest head set.
#[derive(Clone, Debug, PartialEq)]
pub struct ExhaustiveBest {
    pub head_ids: Vec<NodeId>,
    pub cost: f64,
    /// Head sets evaluated.
    pub evaluated: u64,
}

/// Search every k-subset of the eligible candidates. Ties keep the first
/// combination in ascending id order, so the result is deterministic.
pub fn exhaustive_best(nodes: &[Node], k: usize, weights: &CostWeights) -> Result<ExhaustiveBest> {
    if k == 0 {
        return Err(SimError::InvalidParameter {
            name: "cluster_count",
            reason: "must be at least 1".into(),
        });
    }
    let eligible = eligible_candidates(nodes, k)?;
    let combinations = combination_count(eligible.len(), k);
    if combinations > COMBINATION_LIMIT {
        return Err(SimError::OracleTooLarge {
            combinations,
            limit: COMBINATION_LIMIT,
        });
    }
    let mut best: Option<ExhaustiveBest> = None;
    let mut evaluated = 0u64;
    for heads in eligible.iter().copied().combinations(k) {
        let clustering = assign_members(nodes, &heads)?;
        let c = cost(weights, &clustering, nodes)?;
        evaluated += 1;
        if best.as_ref().is_none_or(|b| c < b.cost) {
            best = Some(ExhaustiveBest { head_ids: heads, cost: c, evaluated: 0 });
        }
    }
    let mut best = best.expect("at least one combination exists");
    best.evaluated = evaluated;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{EnergyMode, FieldConfig, Point};

    fn node(id: usize, x: f64, y: f64, energy: f64) -> Node {
        Node {
            id: NodeId(id),
            position: Point::new(x, y),
            energy,
            initial_energy: 0.2,
            alive: energy > 0.0,
        }
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combination_count(6, 2), 15);
        assert_eq!(combination_count(10, 3), 120);
        assert_eq!(combination_count(100, 5), 75_287_520);
        assert_eq!(combination_count(5, 0), 1);
        assert_eq!(combination_count(3, 4), 0);
        assert_eq!(combination_count(50, 25), 126_410_606_437_752);
    }

    #[test]
    fn finds_the_known_best_pair() {
        // Two tight groups; the cheapest pair is one head per group at
        // the group centers (ids 1 and 4).
        let nodes = vec![
            node(0, 0.0, 0.0, 0.2),
            node(1, 1.0, 0.0, 0.2),
            node(2, 2.0, 0.0, 0.2),
            node(3, 40.0, 0.0, 0.2),
            node(4, 41.0, 0.0, 0.2),
            node(5, 42.0, 0.0, 0.2),
        ];
        let best = exhaustive_best(&nodes, 2, &CostWeights::default()).unwrap();
        assert_eq!(best.evaluated, 15);
        let mut heads = best.head_ids.clone();
        heads.sort_by_key(|h| h.0);
        assert_eq!(heads, vec![NodeId(1), NodeId(4)]);
    }

    #[test]
    fn beats_or_matches_every_combination() {
        let field = FieldConfig {
            side_length: 80.0,
            node_count: 10,
            base_station: Point::new(40.0, 40.0),
            cluster_fraction: 0.2,
            energy_mode: EnergyMode::Homogeneous,
            initial_energy: 0.2,
        };
        let nodes = crate::network::deploy(&field, 42).unwrap();
        let weights = CostWeights::default();
        let best = exhaustive_best(&nodes, 2, &weights).unwrap();
        for heads in (0..nodes.len()).map(NodeId).combinations(2) {
            let clustering = assign_members(&nodes, &heads).unwrap();
            let c = cost(&weights, &clustering, &nodes).unwrap();
            assert!(best.cost <= c, "{heads:?} is cheaper");
        }
    }

    #[test]
    fn respects_the_eligibility_filter() {
        // Node 2 is below the mean energy, so it cannot appear as a head.
        let nodes = vec![
            node(0, 0.0, 0.0, 0.3),
            node(1, 10.0, 0.0, 0.3),
            node(2, 20.0, 0.0, 0.05),
        ];
        let best = exhaustive_best(&nodes, 1, &CostWeights::default()).unwrap();
        assert_eq!(best.evaluated, 2);
        assert_ne!(best.head_ids[0], NodeId(2));
    }

    #[test]
    fn rejects_oversized_instances() {
        let field = FieldConfig {
            side_length: 200.0,
            node_count: 120,
            base_station: Point::new(100.0, 100.0),
            cluster_fraction: 0.1,
            energy_mode: EnergyMode::Homogeneous,
            initial_energy: 0.2,
        };
        let nodes = crate::network::deploy(&field, 0).unwrap();
        assert!(matches!(
            exhaustive_best(&nodes, 12, &CostWeights::default()),
            Err(SimError::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_zero_heads() {
        let nodes = vec![node(0, 0.0, 0.0, 0.2)];
        assert!(exhaustive_best(&nodes, 0, &CostWeights::default()).is_err());
    }
}
