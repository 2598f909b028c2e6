//! Independent reference implementations used only by tests.
//!
//! Nothing here shares code with the library paths they check.
#![allow(dead_code)]

use hallugraph_core::Graph;

/// Edit distance by enumerating every partial injection from `g1` into `g2`.
///
/// Unmapped `g1` nodes are deleted along with their edges, unmatched `g2`
/// nodes are inserted; edges are deleted when their image is missing and
/// inserted when no `g1` edge maps onto them. Unit costs throughout.
pub fn exhaustive_ged(g1: &Graph, g2: &Graph) -> u64 {
    let n1 = g1.node_count();
    let n2 = g2.node_count();
    let mut image: Vec<Option<usize>> = vec![None; n1];
    let mut used = vec![false; n2];
    let mut best = u64::MAX;
    enumerate(g1, g2, 0, &mut image, &mut used, &mut best);
    best
}

fn enumerate(
    g1: &Graph,
    g2: &Graph,
    u: usize,
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    best: &mut u64,
) {
    if u == g1.node_count() {
        *best = (*best).min(script_cost(g1, g2, image));
        return;
    }
    image[u] = None;
    enumerate(g1, g2, u + 1, image, used, best);
    for v in 0..g2.node_count() {
        if !used[v] {
            used[v] = true;
            image[u] = Some(v);
            enumerate(g1, g2, u + 1, image, used, best);
            used[v] = false;
        }
    }
    image[u] = None;
}

fn script_cost(g1: &Graph, g2: &Graph, image: &[Option<usize>]) -> u64 {
    let mapped = image.iter().filter(|m| m.is_some()).count();
    let node_deletions = g1.node_count() - mapped;
    let node_insertions = g2.node_count() - mapped;
    let mut edge_deletions = 0;
    let mut kept = 0;
    for &(a, b) in g1.edges() {
        match (image[a], image[b]) {
            (Some(x), Some(y)) if g2.has_edge(x, y) => kept += 1,
            _ => edge_deletions += 1,
        }
    }
    let edge_insertions = g2.edge_count() - kept;
    (node_deletions + node_insertions + edge_deletions + edge_insertions) as u64
}

/// Spearman's rho computed as Pearson correlation of rank positions.
pub fn pearson_on_ranks(a: &[String], b: &[String]) -> f64 {
    let ranks_b: Vec<f64> = a
        .iter()
        .map(|id| b.iter().position(|x| x == id).expect("same ids") as f64)
        .collect();
    let ranks_a: Vec<f64> = (0..a.len()).map(|i| i as f64).collect();
    pearson(&ranks_a, &ranks_b)
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Random simple graph from a 64-bit pattern: node count in `1..=max_nodes`,
/// each possible edge present with probability 1/2.
pub fn graph_from_bits(max_nodes: usize, seed: u64) -> Graph {
    let mut state = seed ^ 0x2545_f491_4f6c_dd1d;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let n = 1 + (next() % max_nodes as u64) as usize;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if next() & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}
