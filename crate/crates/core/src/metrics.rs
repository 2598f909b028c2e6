//! Topological statistics of a single graph, plus the degree-sequence
//! distance to a reference graph.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Sweep cap for [`label_propagation_partition`].
pub const MAX_PROPAGATION_SWEEPS: usize = 100;

/// One row of a statistics table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub node_count: usize,
    pub edge_count: usize,
    pub density: f64,
    /// `None` when degree variance over edge endpoints is zero or there are no edges.
    pub assortativity: Option<f64>,
    /// `None` for edgeless graphs.
    pub modularity: Option<f64>,
    pub degseq_distance: f64,
}

impl MetricsRecord {
    /// Computes every column for `g` against `reference`; modularity uses a
    /// label-propagation partition seeded with `seed`.
    pub fn compute(g: &Graph, reference: &Graph, seed: u64) -> Self {
        let partition = label_propagation_partition(g, seed);
        Self {
            node_count: g.node_count(),
            edge_count: g.edge_count(),
            density: density(g),
            assortativity: degree_assortativity(g),
            modularity: modularity(g, &partition),
            degseq_distance: degseq_distance(g, reference),
        }
    }
}

pub fn density(g: &Graph) -> f64 {
    let n = g.node_count();
    if n <= 1 {
        return 0.0;
    }
    2.0 * g.edge_count() as f64 / (n as f64 * (n as f64 - 1.0))
}

/// Pearson correlation of the degrees at either end of each edge, with every
/// edge counted in both orientations.
pub fn degree_assortativity(g: &Graph) -> Option<f64> {
    if g.edge_count() == 0 {
        return None;
    }
    let degrees = g.degrees();
    let samples = 2.0 * g.edge_count() as f64;
    // Both orientations make the two marginals identical, so one mean and one
    // variance suffice.
    let (mut sum, mut sum_sq, mut sum_xy) = (0.0, 0.0, 0.0);
    for &(u, v) in g.edges() {
        let (x, y) = (degrees[u] as f64, degrees[v] as f64);
        sum += x + y;
        sum_sq += x * x + y * y;
        sum_xy += 2.0 * x * y;
    }
    let mean = sum / samples;
    let variance = sum_sq / samples - mean * mean;
    if variance <= 1e-12 * mean.max(1.0).powi(2) {
        return None;
    }
    Some((sum_xy / samples - mean * mean) / variance)
}

/// Community assignment, one id per node, numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    membership: Vec<usize>,
}

impl Partition {
    /// Renumbers arbitrary community keys to `0..k` in order of first node.
    pub fn from_membership<K: Ord + Copy>(keys: &[K]) -> Self {
        let mut ids = BTreeMap::new();
        let membership = keys
            .iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(*k).or_insert(next)
            })
            .collect();
        Self { membership }
    }

    pub fn single(n: usize) -> Self {
        Self {
            membership: vec![0; n],
        }
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn community_count(&self) -> usize {
        self.membership.iter().max().map_or(0, |m| m + 1)
    }

    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.community_count()];
        for (node, &c) in self.membership.iter().enumerate() {
            blocks[c].push(node);
        }
        blocks
    }
}

/// Asynchronous label propagation.
///
/// Every node starts with its own label. Each sweep visits nodes in a freshly
/// shuffled order; a node whose label is not among the most frequent labels
/// of its neighbours switches to one of those, chosen uniformly. Stops after
/// a sweep with no change or after [`MAX_PROPAGATION_SWEEPS`] sweeps.
pub fn label_propagation_partition(g: &Graph, seed: u64) -> Partition {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut best = Vec::new();

    for _ in 0..MAX_PROPAGATION_SWEEPS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &u in &order {
            if g.degree(u) == 0 {
                continue;
            }
            counts.clear();
            for v in g.neighbors(u) {
                *counts.entry(labels[v]).or_default() += 1;
            }
            let top = counts.values().copied().max().unwrap_or(0);
            best.clear();
            best.extend(counts.iter().filter(|&(_, &c)| c == top).map(|(&l, _)| l));
            if !best.contains(&labels[u]) {
                labels[u] = *best.choose(&mut rng).expect("non-empty neighbourhood");
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Partition::from_membership(&labels)
}

/// Newman modularity, `None` for edgeless graphs.
pub fn modularity(g: &Graph, partition: &Partition) -> Option<f64> {
    assert_eq!(
        partition.membership().len(),
        g.node_count(),
        "partition must cover every node"
    );
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return None;
    }
    let k = partition.community_count();
    let mut intra = vec![0usize; k];
    let mut degree_sum = vec![0usize; k];
    let membership = partition.membership();
    for &(u, v) in g.edges() {
        if membership[u] == membership[v] {
            intra[membership[u]] += 1;
        }
    }
    for (u, &c) in membership.iter().enumerate() {
        degree_sum[c] += g.degree(u);
    }
    Some(
        intra
            .iter()
            .zip(&degree_sum)
            .map(|(&e, &d)| e as f64 / m - (d as f64 / (2.0 * m)).powi(2))
            .sum(),
    )
}

/// ℓ2 distance between descending degree sequences, the shorter one padded
/// with trailing zeros.
pub fn degseq_distance(g: &Graph, reference: &Graph) -> f64 {
    padded_l2(
        g.degree_sequence().iter().map(|&d| d as f64),
        reference.degree_sequence().iter().map(|&d| d as f64),
    )
}

/// ℓ2 norm of the difference of two sequences after zero-padding the shorter.
pub(crate) fn padded_l2(a: impl IntoIterator<Item = f64>, b: impl IntoIterator<Item = f64>) -> f64 {
    let (mut a, mut b) = (a.into_iter().fuse(), b.into_iter().fuse());
    let mut sum = 0.0;
    loop {
        match (a.next(), b.next()) {
            (None, None) => break,
            (x, y) => {
                let d = x.unwrap_or(0.0) - y.unwrap_or(0.0);
                sum += d * d;
            }
        }
    }
    sum.sqrt()
}
