//! Plain-text edge lists: one `<label> <label>` pair per line.
//!
//! Lines starting with `#` and blank lines are skipped. A line holding a
//! single label declares a node without edges, which is how isolated nodes
//! survive a round trip.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{CleanupReport, Graph, LabeledEdgeList};

/// Parsed edge-list text before normalization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeListText {
    pub edges: LabeledEdgeList,
    pub isolated: Vec<String>,
}

impl EdgeListText {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parsed = Self::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => parsed.edges.push(a, b),
                (Some(a), None, None) => parsed.isolated.push(a.to_owned()),
                _ => {
                    return Err(Error::EdgeListSyntax {
                        line: idx + 1,
                        message: format!("expected `<label> <label>`, got `{line}`"),
                    })
                }
            }
        }
        Ok(parsed)
    }

    pub fn into_graph(self) -> (Graph, CleanupReport) {
        let (g, _, report) =
            Graph::from_edge_list_with_nodes(&self.edges, self.isolated.iter().map(String::as_str));
        (g, report)
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(EdgeListText::parse(text)?.into_graph().0)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Serializes `g` with edges in insertion order, followed by any isolated
/// nodes.
pub fn write_graph(g: &Graph) -> Result<String> {
    let mut out = String::new();
    for label in g.labels() {
        check_label(label)?;
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    for u in (0..g.node_count()).filter(|&u| g.degree(u) == 0) {
        let _ = writeln!(out, "{}", g.label(u));
    }
    Ok(out)
}

/// Serializes raw label pairs, one per line.
pub fn write_pairs<'a, I>(pairs: I) -> Result<String>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut out = String::new();
    for (a, b) in pairs {
        check_label(a)?;
        check_label(b)?;
        let _ = writeln!(out, "{a} {b}");
    }
    Ok(out)
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.starts_with('#') || label.chars().any(char::is_whitespace) {
        return Err(Error::UnwritableLabel(label.to_owned()));
    }
    Ok(())
}
