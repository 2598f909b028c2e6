//! Undirected simple graphs over dense ids `0..n`.
//!
//! Graphs are built once and then only read. Every node carries the label it
//! had in the source edge list (or its id rendered as a string when the graph
//! was built programmatically), and the edge insertion order is retained so
//! that graphs serialize back to the same edge list they were read from.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest graph accepted by [`Graph::is_isomorphic_small`].
pub const ISOMORPHISM_NODE_LIMIT: usize = 8;

/// Raw `(label, label)` pairs as extracted from a response or file.
///
/// May contain duplicates and self-loops; both are removed by
/// [`Graph::from_edge_list`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledEdgeList {
    pub edges: Vec<(String, String)>,
}

impl LabeledEdgeList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, a: impl Into<String>, b: impl Into<String>) {
        self.edges.push((a.into(), b.into()));
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }
}

impl<A: Into<String>, B: Into<String>> FromIterator<(A, B)> for LabeledEdgeList {
    fn from_iter<T: IntoIterator<Item = (A, B)>>(iter: T) -> Self {
        Self {
            edges: iter
                .into_iter()
                .map(|(a, b)| (a.into(), b.into()))
                .collect(),
        }
    }
}

/// Label to node id map produced while normalizing an edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Relabeling {
    ids: HashMap<String, usize>,
}

impl Relabeling {
    pub fn id(&self, label: &str) -> Option<usize> {
        self.ids.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn intern(&mut self, label: &str, labels: &mut Vec<String>) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = labels.len();
        labels.push(label.to_owned());
        self.ids.insert(label.to_owned(), id);
        id
    }
}

/// What was dropped while turning a raw edge list into a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanupReport {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl CleanupReport {
    pub fn is_clean(&self) -> bool {
        self.duplicates == 0 && self.self_loops == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl Graph {
    /// `n` isolated nodes labelled by their ids.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
            edges: Vec::new(),
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// Builds a graph from id pairs. Repeated edges are ignored; self-loops
    /// and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n > 2 {
            g.insert_edge(n - 1, 0);
        }
        g
    }

    /// Star on `n` nodes with node 0 as the hub.
    pub fn star(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (0, v))).expect("valid star")
    }

    /// Normalizes a raw edge list into a simple graph.
    ///
    /// Ids are assigned in order of first appearance. Self-loops and repeated
    /// unordered pairs are dropped and counted. A label that only occurs in
    /// self-loops still becomes a (possibly isolated) node.
    pub fn from_edge_list(raw: &LabeledEdgeList) -> (Graph, Relabeling, CleanupReport) {
        Self::from_edge_list_with_nodes(raw, std::iter::empty::<&str>())
    }

    /// Like [`Graph::from_edge_list`], additionally declaring nodes that may
    /// have no incident edge. Extra labels are interned after edge labels
    /// unless they already appeared earlier.
    pub fn from_edge_list_with_nodes<'a, I>(
        raw: &LabeledEdgeList,
        extra_nodes: I,
    ) -> (Graph, Relabeling, CleanupReport)
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut relabeling = Relabeling::default();
        let mut labels = Vec::new();
        let mut pairs = Vec::with_capacity(raw.len());
        let mut report = CleanupReport::default();
        for (a, b) in raw.iter() {
            let u = relabeling.intern(a, &mut labels);
            let v = relabeling.intern(b, &mut labels);
            pairs.push((u, v));
        }
        for label in extra_nodes {
            relabeling.intern(label, &mut labels);
        }

        let mut g = Graph {
            adj: vec![BTreeSet::new(); labels.len()],
            edges: Vec::new(),
            labels,
        };
        for (u, v) in pairs {
            if u == v {
                report.self_loops += 1;
            } else if !g.insert_edge(u, v) {
                report.duplicates += 1;
            }
        }
        (g, relabeling, report)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.edges.push((u, v));
            true
        } else {
            false
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order, with the orientation they were given in.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(BTreeSet::len).collect()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Copy of the graph where node `u` becomes `perm[u]`. Labels travel with
    /// their nodes.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.node_count(), "permutation length");
        let mut labels = vec![String::new(); perm.len()];
        for (u, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[u].clone();
        }
        let mut g = Graph {
            adj: vec![BTreeSet::new(); perm.len()],
            edges: Vec::with_capacity(self.edges.len()),
            labels,
        };
        for &(u, v) in &self.edges {
            g.insert_edge(perm[u], perm[v]);
        }
        g
    }

    /// Re-serializes the graph as a raw edge list over its labels.
    pub fn to_edge_list(&self) -> LabeledEdgeList {
        self.edges
            .iter()
            .map(|&(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect()
    }

    /// Node degrees sorted in nonincreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq = self.degrees();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    /// Connected components, each sorted by id, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut block = Vec::new();
            while let Some(u) = stack.pop() {
                block.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            block.sort_unstable();
            components.push(block);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.connected_components().len() == 1
    }

    /// Exact isomorphism test by backtracking, for graphs of at most
    /// [`ISOMORPHISM_NODE_LIMIT`] nodes.
    pub fn is_isomorphic_small(&self, other: &Graph) -> Result<bool> {
        let smaller = self.node_count().min(other.node_count());
        if smaller > ISOMORPHISM_NODE_LIMIT {
            return Err(Error::TooLarge {
                nodes: smaller,
                limit: ISOMORPHISM_NODE_LIMIT,
            });
        }
        if self.node_count() != other.node_count()
            || self.edge_count() != other.edge_count()
            || self.degree_sequence() != other.degree_sequence()
        {
            return Ok(false);
        }

        let mut order: Vec<usize> = (0..self.node_count()).collect();
        order.sort_by_key(|&u| std::cmp::Reverse(self.degree(u)));
        let mut image = vec![usize::MAX; self.node_count()];
        let mut used = vec![false; other.node_count()];
        Ok(self.extend_isomorphism(other, &order, 0, &mut image, &mut used))
    }

    fn extend_isomorphism(
        &self,
        other: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&u) = order.get(depth) else {
            return true;
        };
        for v in 0..other.node_count() {
            if used[v] || other.degree(v) != self.degree(u) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| self.has_edge(u, w) == other.has_edge(v, image[w]));
            if !consistent {
                continue;
            }
            image[u] = v;
            used[v] = true;
            if self.extend_isomorphism(other, order, depth + 1, image, used) {
                return true;
            }
            used[v] = false;
        }
        image[u] = usize::MAX;
        false
    }
}
