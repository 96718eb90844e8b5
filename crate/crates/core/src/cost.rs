//! Cluster assignment and the clustering cost shared by both optimizers.
//!
//! The cost blends two sub-objectives: the maximum average member-to-head
//! distance across clusters (compactness) and the ratio of total initial
//! network energy to the residual energy of the candidate heads (favors
//! high-energy heads). `cost = beta * f1 + (1 - beta) * f2`.

use crate::error::{Result, SimError};
use crate::network::{Node, NodeId, Point};

/// Planar Euclidean distance, meters.
pub fn euclidean(a: Point, b: Point) -> f64 {
    a.distance(b)
}

/// Blend weight between the distance and energy sub-objectives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostWeights {
    /// Weight on the distance term, in [0, 1].
    pub beta: f64,
}

impl CostWeights {
    pub fn new(beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(SimError::InvalidParameter {
                name: "beta",
                reason: format!("must be in [0, 1], got {beta}"),
            });
        }
        Ok(Self { beta })
    }
}

impl Default for CostWeights {
    fn default() -> Self {
        Self { beta: 0.5 }
    }
}

/// A head set plus the member-to-head assignment. Heads map to themselves;
/// dead nodes are unassigned.
#[derive(Clone, Debug, PartialEq)]
pub struct Clustering {
    head_ids: Vec<NodeId>,
    member_of: Vec<Option<usize>>,
}

impl Clustering {
    pub fn head_ids(&self) -> &[NodeId] {
        &self.head_ids
    }

    /// Index into `head_ids` this node belongs to, if assigned.
    pub fn head_index_of(&self, node: NodeId) -> Option<usize> {
        self.member_of.get(node.0).copied().flatten()
    }

    pub fn is_head(&self, node: NodeId) -> bool {
        self.head_ids.contains(&node)
    }

    /// Member count per head, excluding the head itself.
    pub fn member_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.head_ids.len()];
        for (index, assigned) in self.member_of.iter().enumerate() {
            if let Some(k) = assigned {
                if self.head_ids[*k].0 != index {
                    counts[*k] += 1;
                }
            }
        }
        counts
    }
}

/// Assign every alive non-head node to its nearest head. Ties go to the
/// head appearing first in `heads`.
pub fn assign_members(nodes: &[Node], heads: &[NodeId]) -> Result<Clustering> {
    if heads.is_empty() {
        if nodes.iter().any(|n| n.alive) {
            return Err(SimError::NoHeads);
        }
        return Ok(Clustering { head_ids: Vec::new(), member_of: vec![None; nodes.len()] });
    }
    debug_assert!(heads.iter().all(|h| nodes[h.0].alive));

    let mut member_of = vec![None; nodes.len()];
    for (k, head) in heads.iter().enumerate() {
        member_of[head.0] = Some(k);
    }
    for node in nodes.iter().filter(|n| n.alive) {
        if member_of[node.id.0].is_some() {
            continue; // head
        }
        let mut best = 0usize;
        let mut best_distance = f64::INFINITY;
        for (k, head) in heads.iter().enumerate() {
            let d = euclidean(node.position, nodes[head.0].position);
            if d < best_distance {
                best_distance = d;
                best = k;
            }
        }
        member_of[node.id.0] = Some(best);
    }
    Ok(Clustering { head_ids: heads.to_vec(), member_of })
}

/// Maximum over clusters of the average member-to-head distance, meters.
/// The head counts toward the average with distance zero.
pub fn f1(clustering: &Clustering, nodes: &[Node]) -> f64 {
    let k = clustering.head_ids.len();
    if k == 0 {
        return 0.0;
    }
    let mut sums = vec![0.0f64; k];
    let mut counts = vec![1u64; k]; // the head itself
    for node in nodes.iter().filter(|n| n.alive) {
        let Some(idx) = clustering.head_index_of(node.id) else { continue };
        let head = clustering.head_ids[idx];
        if head == node.id {
            continue;
        }
        sums[idx] += euclidean(node.position, nodes[head.0].position);
        counts[idx] += 1;
    }
    sums.iter()
        .zip(&counts)
        .map(|(s, c)| s / *c as f64)
        .fold(0.0, f64::max)
}

/// Ratio of the total initial energy of all nodes to the total residual
/// energy of the candidate heads.
pub fn f2(nodes: &[Node], heads: &[NodeId]) -> Result<f64> {
    let numerator: f64 = nodes.iter().map(|n| n.initial_energy).sum();
    let denominator: f64 = heads.iter().map(|h| nodes[h.0].energy).sum();
    if denominator <= 0.0 {
        return Err(SimError::DeadHeads);
    }
    Ok(numerator / denominator)
}

/// `beta * f1 + (1 - beta) * f2`.
pub fn cost(weights: &CostWeights, clustering: &Clustering, nodes: &[Node]) -> Result<f64> {
    let distance_term = f1(clustering, nodes);
    let energy_term = f2(nodes, clustering.head_ids())?;
    Ok(weights.beta * distance_term + (1.0 - weights.beta) * energy_term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn node(id: usize, x: f64, y: f64, energy: f64, initial: f64) -> Node {
        Node {
            id: NodeId(id),
            position: Point::new(x, y),
            energy,
            initial_energy: initial,
            alive: energy > 0.0,
        }
    }

    #[test]
    fn euclidean_examples() {
        assert_eq!(euclidean(Point::new(0.0, 0.0), Point::new(3.0, 4.0)), 5.0);
        assert_eq!(euclidean(Point::new(2.0, 2.0), Point::new(2.0, 2.0)), 0.0);
        assert_eq!(euclidean(Point::new(1.0, 1.0), Point::new(4.0, 5.0)), 5.0);
    }

    #[test]
    fn single_head_takes_everyone() {
        let nodes = vec![
            node(0, 0.0, 0.0, 0.2, 0.2),
            node(1, 5.0, 5.0, 0.2, 0.2),
            node(2, 9.0, 1.0, 0.2, 0.2),
        ];
        let clustering = assign_members(&nodes, &[NodeId(1)]).unwrap();
        assert_eq!(clustering.head_index_of(NodeId(0)), Some(0));
        assert_eq!(clustering.head_index_of(NodeId(2)), Some(0));
        assert_eq!(clustering.member_counts(), vec![2]);
    }

    #[test]
    fn equidistant_tie_goes_to_first_listed_head() {
        let nodes = vec![
            node(0, 0.0, 0.0, 0.2, 0.2),
            node(1, 10.0, 0.0, 0.2, 0.2),
            node(2, 5.0, 0.0, 0.2, 0.2),
        ];
        let clustering = assign_members(&nodes, &[NodeId(0), NodeId(1)]).unwrap();
        assert_eq!(clustering.head_index_of(NodeId(2)), Some(0));
        let clustering = assign_members(&nodes, &[NodeId(1), NodeId(0)]).unwrap();
        assert_eq!(clustering.head_index_of(NodeId(2)), Some(0)); // now head 1
        assert_eq!(clustering.head_ids()[0], NodeId(1));
    }

    #[test]
    fn rejects_empty_heads_with_alive_nodes() {
        let nodes = vec![node(0, 0.0, 0.0, 0.2, 0.2)];
        assert!(matches!(assign_members(&nodes, &[]), Err(SimError::NoHeads)));
    }

    #[test]
    fn corner_heads_split_the_field() {
        // Two heads at opposite corners; verify against an exhaustive
        // distance table built independently below.
        let nodes = vec![
            node(0, 0.0, 0.0, 0.2, 0.2),
            node(1, 10.0, 10.0, 0.2, 0.2),
            node(2, 1.0, 2.0, 0.2, 0.2),
            node(3, 9.0, 8.0, 0.2, 0.2),
            node(4, 2.0, 9.0, 0.2, 0.2),
            node(5, 6.0, 5.0, 0.2, 0.2),
        ];
        let heads = [NodeId(0), NodeId(1)];
        let clustering = assign_members(&nodes, &heads).unwrap();
        for n in &nodes {
            if heads.contains(&n.id) {
                continue;
            }
            let mut expected = 0usize;
            let mut best = f64::INFINITY;
            for (k, h) in heads.iter().enumerate() {
                let dx = n.position.x - nodes[h.0].position.x;
                let dy = n.position.y - nodes[h.0].position.y;
                let d = (dx * dx + dy * dy).sqrt();
                if d < best {
                    best = d;
                    expected = k;
                }
            }
            assert_eq!(clustering.head_index_of(n.id), Some(expected));
        }
    }

    #[test]
    fn assign_matches_brute_force_on_random_instances() {
        for seed in 0..25u64 {
            let mut rng = crate::rng::stream_rng(seed, crate::rng::RngStream::Deployment);
            let n = rng.random_range(2..=50);
            let k = rng.random_range(1..=n.min(8));
            let nodes: Vec<Node> = (0..n)
                .map(|i| {
                    node(
                        i,
                        rng.random_range(0.0..100.0),
                        rng.random_range(0.0..100.0),
                        0.2,
                        0.2,
                    )
                })
                .collect();
            let heads: Vec<NodeId> = (0..k).map(NodeId).collect();
            let clustering = assign_members(&nodes, &heads).unwrap();
            for nd in &nodes {
                if heads.contains(&nd.id) {
                    assert_eq!(clustering.head_ids()[clustering.head_index_of(nd.id).unwrap()], nd.id);
                    continue;
                }
                // Independent nearest-head scan with the same tie rule.
                let mut expected = 0usize;
                let mut best = f64::INFINITY;
                for (idx, h) in heads.iter().enumerate() {
                    let dx = nd.position.x - nodes[h.0].position.x;
                    let dy = nd.position.y - nodes[h.0].position.y;
                    let d = (dx * dx + dy * dy).sqrt();
                    if d < best {
                        best = d;
                        expected = idx;
                    }
                }
                assert_eq!(clustering.head_index_of(nd.id), Some(expected), "seed {seed}");
            }
        }
    }

    #[test]
    fn f1_worked_example() {
        let nodes = vec![
            node(0, 0.0, 0.0, 0.2, 0.2),
            node(1, 3.0, 4.0, 0.2, 0.2),
            node(2, 0.0, 5.0, 0.2, 0.2),
        ];
        let clustering = assign_members(&nodes, &[NodeId(0)]).unwrap();
        assert!((f1(&clustering, &nodes) - 10.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn f1_zero_when_every_node_heads() {
        let nodes: Vec<Node> = (0..4).map(|i| node(i, i as f64, 0.0, 0.2, 0.2)).collect();
        let heads: Vec<NodeId> = (0..4).map(NodeId).collect();
        let clustering = assign_members(&nodes, &heads).unwrap();
        assert_eq!(f1(&clustering, &nodes), 0.0);
    }

    #[test]
    fn f1_single_member_halves_distance() {
        let nodes = vec![node(0, 0.0, 0.0, 0.2, 0.2), node(1, 7.0, 0.0, 0.2, 0.2)];
        let clustering = assign_members(&nodes, &[NodeId(0)]).unwrap();
        assert!((f1(&clustering, &nodes) - 3.5).abs() < 1e-12);
    }

    #[test]
    fn f2_worked_example() {
        let mut nodes: Vec<Node> = (0..10).map(|i| node(i, i as f64, 0.0, 0.2, 0.2)).collect();
        nodes[0].energy = 0.1;
        nodes[1].energy = 0.1;
        let value = f2(&nodes, &[NodeId(0), NodeId(1)]).unwrap();
        assert!((value - 10.0).abs() < 1e-12);
    }

    #[test]
    fn f2_identity_when_all_heads_at_initial() {
        let nodes: Vec<Node> = (0..5).map(|i| node(i, i as f64, 0.0, 0.2, 0.2)).collect();
        let heads: Vec<NodeId> = (0..5).map(NodeId).collect();
        assert!((f2(&nodes, &heads).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f2_halves_when_head_energy_doubles() {
        let mut nodes: Vec<Node> = (0..6).map(|i| node(i, i as f64, 0.0, 0.1, 0.2)).collect();
        let heads = [NodeId(2), NodeId(3)];
        let before = f2(&nodes, &heads).unwrap();
        nodes[2].energy *= 2.0;
        nodes[3].energy *= 2.0;
        let after = f2(&nodes, &heads).unwrap();
        assert!((after - before / 2.0).abs() < 1e-12);
    }

    #[test]
    fn f2_ignores_dead_non_head_energy() {
        let mut nodes: Vec<Node> = (0..6).map(|i| node(i, i as f64, 0.0, 0.2, 0.2)).collect();
        let heads = [NodeId(0)];
        let before = f2(&nodes, &heads).unwrap();
        nodes[5].energy = 0.0;
        nodes[5].alive = false;
        let after = f2(&nodes, &heads).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn f2_rejects_drained_heads() {
        let mut nodes = vec![node(0, 0.0, 0.0, 0.2, 0.2)];
        nodes[0].energy = 0.0;
        assert!(matches!(f2(&nodes, &[NodeId(0)]), Err(SimError::DeadHeads)));
    }

    #[test]
    fn cost_degenerate_weights() {
        let nodes = vec![
            node(0, 0.0, 0.0, 0.2, 0.2),
            node(1, 3.0, 4.0, 0.2, 0.2),
            node(2, 0.0, 5.0, 0.2, 0.2),
        ];
        let clustering = assign_members(&nodes, &[NodeId(0)]).unwrap();
        let w1 = CostWeights::new(1.0).unwrap();
        assert_eq!(cost(&w1, &clustering, &nodes).unwrap(), f1(&clustering, &nodes));
        let w0 = CostWeights::new(0.0).unwrap();
        assert_eq!(
            cost(&w0, &clustering, &nodes).unwrap(),
            f2(&nodes, clustering.head_ids()).unwrap()
        );
    }

    #[test]
    fn cost_worked_example() {
        // f1 = 10/3 from the assignment above, f2 forced to 10 by draining
        // the head to a tenth of the network's initial total.
        let mut nodes = vec![
            node(0, 0.0, 0.0, 0.2, 0.2),
            node(1, 3.0, 4.0, 0.2, 0.2),
            node(2, 0.0, 5.0, 0.2, 0.2),
        ];
        nodes[0].energy = 0.06;
        let clustering = assign_members(&nodes, &[NodeId(0)]).unwrap();
        let w = CostWeights::new(0.5).unwrap();
        let value = cost(&w, &clustering, &nodes).unwrap();
        assert!((value - (0.5 * 10.0 / 3.0 + 0.5 * 10.0)).abs() < 1e-12);
    }

    #[test]
    fn cost_monotone_in_each_term() {
        let w = CostWeights::new(0.3).unwrap();
        let combine = |d: f64, e: f64| w.beta * d + (1.0 - w.beta) * e;
        assert!(combine(5.0, 2.0) <= combine(6.0, 2.0));
        assert!(combine(5.0, 2.0) <= combine(5.0, 3.0));
    }

    #[test]
    fn weights_validated() {
        assert!(CostWeights::new(-0.1).is_err());
        assert!(CostWeights::new(1.1).is_err());
        assert!(CostWeights::new(0.0).is_ok());
        assert!(CostWeights::new(1.0).is_ok());
    }
}
