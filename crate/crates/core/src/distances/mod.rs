//! Graph-to-graph distances and their aggregates.

mod ged;
pub mod lsap;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

pub use ged::{graph_edit_distance, GedResult, DEFAULT_EXPANSION_BUDGET};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::padded_l2;
use crate::spectrum::adjacency_spectrum;

/// Graph Atlas Distance: edit distances to a set of atlas graphs, summarized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GadScore {
    pub per_graph: BTreeMap<u32, GedResult>,
    pub mean: f64,
    /// Population standard deviation of the per-graph distances.
    pub std: f64,
    pub resolution: usize,
}

impl GadScore {
    pub fn all_exact(&self) -> bool {
        self.per_graph.values().all(|r| r.exact)
    }
}

/// Scores outputs against truths keyed by atlas index. Both maps must have
/// the same keys.
pub fn gad(
    outputs: &BTreeMap<u32, Graph>,
    truths: &BTreeMap<u32, Graph>,
    budget: Option<u64>,
) -> Result<GadScore> {
    let only_left: Vec<u32> = outputs
        .keys()
        .filter(|k| !truths.contains_key(k))
        .copied()
        .collect();
    let only_right: Vec<u32> = truths
        .keys()
        .filter(|k| !outputs.contains_key(k))
        .copied()
        .collect();
    if !only_left.is_empty() || !only_right.is_empty() || outputs.is_empty() {
        return Err(Error::KeyMismatch {
            only_left,
            only_right,
        });
    }
    let per_graph: BTreeMap<u32, GedResult> = truths
        .iter()
        .map(|(&index, truth)| (index, graph_edit_distance(&outputs[&index], truth, budget)))
        .collect();
    let distances: Vec<f64> = per_graph.values().map(|r| r.distance as f64).collect();
    let (mean, std) = mean_and_population_std(&distances);
    Ok(GadScore {
        resolution: per_graph.len(),
        per_graph,
        mean,
        std,
    })
}

pub fn mean_and_population_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, variance.sqrt())
}

/// ℓ2 distance between adjacency spectra sorted in descending order, the
/// shorter spectrum padded with trailing zeros.
pub fn spectral_distance(g1: &Graph, g2: &Graph) -> f64 {
    let a = adjacency_spectrum(g1);
    let b = adjacency_spectrum(g2);
    padded_l2(a.into_iter().rev(), b.into_iter().rev())
}

/// Maps output labels into the reference label space. Labels without an
/// entry map to themselves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    map: BTreeMap<String, String>,
}

impl Alignment {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, from: impl Into<String>, to: impl Into<String>) {
        self.map.insert(from.into(), to.into());
    }

    pub fn apply<'a>(&'a self, label: &'a str) -> &'a str {
        self.map.get(label).map_or(label, String::as_str)
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    /// Shifts every integer label by `shift`; other labels are untouched.
    pub fn integer_shift<'a>(labels: impl IntoIterator<Item = &'a str>, shift: i64) -> Self {
        let mut alignment = Self::identity();
        if shift != 0 {
            for label in labels {
                if let Ok(value) = label.parse::<i64>() {
                    alignment.insert(label, (value + shift).to_string());
                }
            }
        }
        alignment
    }

    fn check_injective(&self, labels: &[String]) -> Result<()> {
        let mut seen: HashMap<&str, &str> = HashMap::new();
        for label in labels {
            let target = self.apply(label);
            if let Some(first) = seen.insert(target, label) {
                return Err(Error::NonInjectiveAlignment {
                    first: first.to_owned(),
                    second: label.clone(),
                    target: target.to_owned(),
                });
            }
        }
        Ok(())
    }
}

/// Picks the integer shift in `{0, -1, +1}` that maximizes the edge
/// intersection with `reference`; ties go to the earlier shift.
pub fn default_alignment(out: &Graph, reference: &Graph) -> Alignment {
    let labels = || out.labels().iter().map(String::as_str);
    let mut best: Option<(usize, Alignment)> = None;
    for shift in [0, -1, 1] {
        let alignment = Alignment::integer_shift(labels(), shift);
        let Ok(diff) = graph_diff(out, reference, &alignment) else {
            continue;
        };
        let size = diff.intersection.len();
        if !best.as_ref().is_some_and(|(s, _)| size <= *s) {
            best = Some((size, alignment));
        }
    }
    best.map(|(_, a)| a).unwrap_or_default()
}

/// Edge-level comparison of an output graph against a reference, over
/// reference labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    /// Reference edges also present in the output, in reference order.
    pub intersection: Vec<(String, String)>,
    /// Output edges absent from the reference, in output order.
    pub added: Vec<(String, String)>,
    /// Reference edges absent from the output, in reference order.
    pub missing: Vec<(String, String)>,
    pub alignment: Alignment,
}

pub fn graph_diff(out: &Graph, reference: &Graph, alignment: &Alignment) -> Result<DiffReport> {
    alignment.check_injective(out.labels())?;

    fn key(a: &str, b: &str) -> (String, String) {
        if a <= b {
            (a.to_owned(), b.to_owned())
        } else {
            (b.to_owned(), a.to_owned())
        }
    }

    let aligned: Vec<(String, String)> = out
        .edges()
        .iter()
        .map(|&(u, v)| {
            (
                alignment.apply(out.label(u)).to_owned(),
                alignment.apply(out.label(v)).to_owned(),
            )
        })
        .collect();
    let out_keys: HashSet<(String, String)> = aligned.iter().map(|(a, b)| key(a, b)).collect();
    let ref_edges: Vec<(String, String)> = reference
        .edges()
        .iter()
        .map(|&(u, v)| (reference.label(u).to_owned(), reference.label(v).to_owned()))
        .collect();
    let ref_keys: HashSet<(String, String)> = ref_edges.iter().map(|(a, b)| key(a, b)).collect();

    let (intersection, missing) = ref_edges
        .into_iter()
        .partition(|(a, b)| out_keys.contains(&key(a, b)));
    let added = aligned
        .into_iter()
        .filter(|(a, b)| !ref_keys.contains(&key(a, b)))
        .collect();
    Ok(DiffReport {
        intersection,
        added,
        missing,
        alignment: alignment.clone(),
    })
}

/// Spearman's ρ between two orderings of the same ids.
pub fn spearman_rank_correlation<S: AsRef<str>>(rank_a: &[S], rank_b: &[S]) -> Result<f64> {
    let positions = |ranking: &[S]| -> Result<HashMap<String, usize>> {
        let mut map = HashMap::with_capacity(ranking.len());
        for (i, id) in ranking.iter().enumerate() {
            if map.insert(id.as_ref().to_owned(), i).is_some() {
                return Err(Error::DuplicateRankId(id.as_ref().to_owned()));
            }
        }
        Ok(map)
    };
    let a = positions(rank_a)?;
    let b = positions(rank_b)?;
    let mut only_left: Vec<String> = a.keys().filter(|k| !b.contains_key(*k)).cloned().collect();
    let mut only_right: Vec<String> = b.keys().filter(|k| !a.contains_key(*k)).cloned().collect();
    if !only_left.is_empty() || !only_right.is_empty() {
        only_left.sort();
        only_right.sort();
        return Err(Error::RankMismatch {
            only_left,
            only_right,
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::RankTooShort);
    }
    let squared: f64 = a
        .iter()
        .map(|(id, &pa)| {
            let d = pa as f64 - b[id] as f64;
            d * d
        })
        .sum();
    let n = n as f64;
    Ok(1.0 - 6.0 * squared / (n * (n * n - 1.0)))
}
