//! Shared inputs for the criterion benchmarks.

use hallugraph_core::{load_ground_truth, Graph};

/// Karate club with its first `k` edges removed.
pub fn karate_minus(k: usize) -> Graph {
    let kc = load_ground_truth("karate").expect("bundled");
    Graph::from_edges(kc.node_count(), kc.edges().iter().copied().skip(k)).expect("valid")
}

/// A response in the usual shape: prose, then a fenced python edge list.
pub fn synthetic_response(g: &Graph) -> String {
    let mut text =
        String::from("Here is the graph:\n\n```python\nimport networkx as nx\n\nedges = [\n");
    for &(u, v) in g.edges() {
        text.push_str(&format!("    ({}, {}),\n", g.label(u), g.label(v)));
    }
    text.push_str("]\nG = nx.Graph()\nG.add_edges_from(edges)\nprint(G.edges())\n```\n");
    text
}
