//! Exact graph edit distance with unit costs and no labels.
//!
//! Node and edge insertions and deletions each cost 1. An optimal edit script
//! always maps every node of the smaller graph onto a distinct node of the
//! larger one (deleting a node and inserting another is never cheaper than
//! mapping one onto the other), so the distance is
//!
//! ```text
//! |n1 - n2| + min over injections φ of |E_small Δ φ⁻¹(E_large)|
//! ```
//!
//! The search is best-first over partial injections of the smaller graph's
//! nodes. The lower bound for a partial injection adds, for every unassigned
//! node, the exact mismatch count toward already-assigned nodes plus half the
//! difference between its remaining degree and that of its image, minimized
//! with a linear assignment. Each bound solution also yields a complete
//! injection, whose exact cost tightens the incumbent.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::lsap;
use crate::graph::Graph;

/// Expansion budget used when the caller does not pass one.
pub const DEFAULT_EXPANSION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GedResult {
    pub distance: u64,
    /// True when `distance` is proven minimal; false when the budget ran out
    /// and `distance` is the best upper bound found.
    pub exact: bool,
    pub explored_nodes: u64,
    /// For each node of the first graph, the node of the second graph it maps
    /// to, or `None` if it is deleted.
    pub mapping: Option<Vec<Option<usize>>>,
}

/// Computes the edit distance between `g1` and `g2`, expanding at most
/// `budget` search nodes (default [`DEFAULT_EXPANSION_BUDGET`]).
pub fn graph_edit_distance(g1: &Graph, g2: &Graph, budget: Option<u64>) -> GedResult {
    let swapped = g1.node_count() > g2.node_count();
    let (small, large) = if swapped { (g2, g1) } else { (g1, g2) };
    let search = Search::new(small, large);
    let outcome = search.run(budget.unwrap_or(DEFAULT_EXPANSION_BUDGET));

    // `outcome.images[i]` is the large-graph image of small node i.
    let mapping = if swapped {
        let mut inverse = vec![None; g1.node_count()];
        for (s, &l) in outcome.images.iter().enumerate() {
            inverse[l] = Some(s);
        }
        inverse
    } else {
        outcome.images.iter().map(|&l| Some(l)).collect()
    };

    GedResult {
        distance: outcome.cost,
        exact: outcome.exact,
        explored_nodes: outcome.expansions,
        mapping: Some(mapping),
    }
}

struct Outcome {
    cost: u64,
    exact: bool,
    expansions: u64,
    images: Vec<usize>,
}

struct Search<'a> {
    small: &'a Graph,
    large: &'a Graph,
    /// Small-graph nodes in assignment order.
    order: Vec<usize>,
    /// Constant node-insertion cost.
    node_cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct State {
    bound: u64,
    cost_so_far: u64,
    /// Images of `order[..images.len()]`.
    images: Vec<usize>,
    seq: u64,
}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap: smallest bound first, then deepest, then oldest.
        Reverse(self.bound)
            .cmp(&Reverse(other.bound))
            .then(self.images.len().cmp(&other.images.len()))
            .then(Reverse(self.seq).cmp(&Reverse(other.seq)))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Estimate {
    bound: u64,
    completion: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(small: &'a Graph, large: &'a Graph) -> Self {
        let mut order: Vec<usize> = (0..small.node_count()).collect();
        order.sort_by_key(|&u| (Reverse(small.degree(u)), u));
        Self {
            small,
            large,
            order,
            node_cost: (large.node_count() - small.node_count()) as u64,
        }
    }

    fn run(&self, budget: u64) -> Outcome {
        let root_images = Vec::new();
        let root = self.estimate(&root_images, 0);
        let mut best_images = self.full_images(&root.completion);
        let mut best_cost = self.exact_cost(&best_images);

        let mut heap = BinaryHeap::new();
        let mut seq = 0u64;
        heap.push(State {
            bound: root.bound,
            cost_so_far: 0,
            images: root_images,
            seq,
        });

        let mut expansions = 0u64;
        let mut exact = true;
        while let Some(state) = heap.pop() {
            if state.bound >= best_cost {
                break;
            }
            if state.images.len() == self.order.len() {
                // Complete states carry their exact cost as bound.
                best_cost = state.bound;
                best_images = self.full_images(&state.images);
                continue;
            }
            if expansions >= budget {
                exact = false;
                break;
            }
            expansions += 1;

            let depth = state.images.len();
            let u = self.order[depth];
            let mut used = vec![false; self.large.node_count()];
            for &v in &state.images {
                used[v] = true;
            }
            for v in (0..self.large.node_count()).filter(|&v| !used[v]) {
                let step: u64 = (0..depth)
                    .filter(|&i| {
                        self.small.has_edge(u, self.order[i])
                            != self.large.has_edge(v, state.images[i])
                    })
                    .count() as u64;
                let mut images = state.images.clone();
                images.push(v);
                let cost_so_far = state.cost_so_far + step;
                let estimate = self.estimate(&images, cost_so_far);

                let candidate = self.full_images(&estimate.completion);
                let candidate_cost = self.exact_cost(&candidate);
                if candidate_cost < best_cost {
                    best_cost = candidate_cost;
                    best_images = candidate;
                }
                if estimate.bound < best_cost {
                    seq += 1;
                    heap.push(State {
                        bound: estimate.bound,
                        cost_so_far,
                        images,
                        seq,
                    });
                }
            }
        }

        Outcome {
            cost: best_cost,
            exact,
            expansions,
            images: best_images,
        }
    }

    /// Lower bound on the total cost of any completion of `images`, plus the
    /// completion (images for every small node in `order`) that realizes the
    /// assignment part of the bound.
    fn estimate(&self, images: &[usize], cost_so_far: u64) -> Estimate {
        let depth = images.len();
        let rest = &self.order[depth..];
        let mut used = vec![false; self.large.node_count()];
        for &v in images {
            used[v] = true;
        }
        let free: Vec<usize> = (0..self.large.node_count()).filter(|&v| !used[v]).collect();
        let mut in_rest = vec![false; self.small.node_count()];
        for &u in rest {
            in_rest[u] = true;
        }

        let small_rest_degree: Vec<i64> = rest
            .iter()
            .map(|&u| self.small.neighbors(u).filter(|&w| in_rest[w]).count() as i64)
            .collect();
        let large_rest_degree: Vec<i64> = free
            .iter()
            .map(|&v| self.large.neighbors(v).filter(|&w| !used[w]).count() as i64)
            .collect();
        let large_to_assigned: Vec<i64> = free
            .iter()
            .map(|&v| {
                images
                    .iter()
                    .filter(|&&w| self.large.has_edge(v, w))
                    .count() as i64
            })
            .collect();

        // Doubled costs keep everything integral. Free large nodes left without
        // a preimage pair with an isolated padding node; their cost is
        // subtracted per column so the rectangular problem accounts for it.
        let padding_cost: Vec<i64> = large_to_assigned
            .iter()
            .zip(&large_rest_degree)
            .map(|(&a, &d)| 2 * a + d)
            .collect();
        let cols = free.len();
        let mut matrix = Vec::with_capacity(rest.len() * cols);
        for (r, &u) in rest.iter().enumerate() {
            for (c, &v) in free.iter().enumerate() {
                let mismatch = (0..depth)
                    .filter(|&i| {
                        self.small.has_edge(u, self.order[i]) != self.large.has_edge(v, images[i])
                    })
                    .count() as i64;
                let degree_gap = (small_rest_degree[r] - large_rest_degree[c]).abs();
                matrix.push(2 * mismatch + degree_gap - padding_cost[c]);
            }
        }
        let (assigned, columns) = lsap::solve(&matrix, rest.len(), cols);
        let doubled = assigned + padding_cost.iter().sum::<i64>();
        debug_assert!(doubled >= 0);
        let remaining = (doubled as u64).div_ceil(2);

        let mut completion = images.to_vec();
        completion.extend(columns.iter().map(|&c| free[c]));
        Estimate {
            bound: self.node_cost + cost_so_far + remaining,
            completion,
        }
    }

    /// Converts images in `order` sequence into images indexed by small node.
    fn full_images(&self, ordered: &[usize]) -> Vec<usize> {
        let mut images = vec![0; self.small.node_count()];
        for (&u, &v) in self.order.iter().zip(ordered) {
            images[u] = v;
        }
        images
    }

    /// Exact edit cost of the injection `images` (indexed by small node).
    fn exact_cost(&self, images: &[usize]) -> u64 {
        let preserved = self
            .small
            .edges()
            .iter()
            .filter(|&&(u, v)| self.large.has_edge(images[u], images[v]))
            .count();
        self.node_cost + (self.small.edge_count() + self.large.edge_count() - 2 * preserved) as u64
    }
}
