//! Heat-trace (NetLSD) graph signatures.
//!
//! `h(t) = Σ_i exp(-λ_i t)` over the normalized Laplacian spectrum, sampled on
//! a log-spaced timescale grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectrum::normalized_laplacian_spectrum;

pub const DEFAULT_TIMESCALE_COUNT: usize = 250;
pub const DEFAULT_TIMESCALE_MIN_EXP: f64 = -2.0;
pub const DEFAULT_TIMESCALE_MAX_EXP: f64 = 2.0;

/// Optional rescaling of the heat trace.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    #[default]
    None,
    /// Divide by the trace of the edgeless graph on the same nodes (`n`).
    Empty,
    /// Divide by the trace of the complete graph on the same nodes.
    Complete,
}

/// `count` points spaced evenly in log10 between `10^min_exp` and `10^max_exp`.
pub fn log_timescales(min_exp: f64, max_exp: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![10f64.powf(min_exp)],
        _ => {
            let step = (max_exp - min_exp) / (count - 1) as f64;
            (0..count)
                .map(|i| 10f64.powf(min_exp + step * i as f64))
                .collect()
        }
    }
}

pub fn default_timescales() -> Vec<f64> {
    log_timescales(
        DEFAULT_TIMESCALE_MIN_EXP,
        DEFAULT_TIMESCALE_MAX_EXP,
        DEFAULT_TIMESCALE_COUNT,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatSignature {
    pub timescales: Vec<f64>,
    pub values: Vec<f64>,
}

/// Signature on the default grid, unnormalized.
pub fn heat_trace_signature(g: &Graph) -> Result<HeatSignature> {
    heat_trace_signature_with(g, &default_timescales(), Normalization::None)
}

pub fn heat_trace_signature_with(
    g: &Graph,
    timescales: &[f64],
    normalization: Normalization,
) -> Result<HeatSignature> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let spectrum = normalized_laplacian_spectrum(g);
    let values = timescales
        .iter()
        .map(|&t| {
            let trace: f64 = spectrum.iter().map(|&l| (-l * t).exp()).sum();
            trace / normalizer(n, t, normalization)
        })
        .collect();
    Ok(HeatSignature {
        timescales: timescales.to_vec(),
        values,
    })
}

fn normalizer(n: usize, t: f64, normalization: Normalization) -> f64 {
    match normalization {
        Normalization::None => 1.0,
        Normalization::Empty => n as f64,
        Normalization::Complete if n == 1 => 1.0,
        Normalization::Complete => {
            // K_n: eigenvalue 0 once and n/(n-1) with multiplicity n-1.
            let n = n as f64;
            1.0 + (n - 1.0) * (-t * n / (n - 1.0)).exp()
        }
    }
}

/// ℓ2 distance between two signatures sampled on the same grid.
pub fn signature_distance(a: &HeatSignature, b: &HeatSignature) -> Result<f64> {
    if a.timescales != b.timescales || a.values.len() != b.values.len() {
        return Err(Error::GridMismatch);
    }
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let grid = default_timescales();
        assert_eq!(grid.len(), 250);
        assert!((grid[0] - 0.01).abs() < 1e-15);
        assert!((grid[249] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn constant_traces() {
        let single = heat_trace_signature(&Graph::empty(1)).unwrap();
        assert!(single.values.iter().all(|&v| (v - 1.0).abs() < 1e-12));
        let four = heat_trace_signature(&Graph::empty(4)).unwrap();
        assert!(four.values.iter().all(|&v| (v - 4.0).abs() < 1e-12));
    }

    #[test]
    fn k2_closed_form() {
        let sig = heat_trace_signature(&Graph::complete(2)).unwrap();
        for (&t, &h) in sig.timescales.iter().zip(&sig.values) {
            assert!((h - (1.0 + (-2.0 * t).exp())).abs() < 1e-9);
        }
    }

    #[test]
    fn distances() {
        let one = heat_trace_signature(&Graph::empty(1)).unwrap();
        let two = heat_trace_signature(&Graph::empty(2)).unwrap();
        assert_eq!(signature_distance(&one, &one).unwrap(), 0.0);
        assert!((signature_distance(&one, &two).unwrap() - 250f64.sqrt()).abs() < 1e-9);

        // h_K2(t) = 1 + e^{-2t}: differs from one isolated node by e^{-2t}
        // and from two isolated nodes by 1 - e^{-2t}.
        let k2 = heat_trace_signature(&Graph::complete(2)).unwrap();
        let expected: f64 = k2
            .timescales
            .iter()
            .map(|t| (-4.0 * t).exp())
            .sum::<f64>()
            .sqrt();
        assert!((signature_distance(&k2, &one).unwrap() - expected).abs() < 1e-9);
        let expected: f64 = k2
            .timescales
            .iter()
            .map(|t| (1.0 - (-2.0 * t).exp()).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!((signature_distance(&k2, &two).unwrap() - expected).abs() < 1e-9);

        let short =
            heat_trace_signature_with(&Graph::empty(1), &[1.0], Normalization::None).unwrap();
        assert!(matches!(
            signature_distance(&one, &short),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn empty_graph_rejected() {
        assert!(matches!(
            heat_trace_signature(&Graph::empty(0)),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn normalizations() {
        let g = Graph::complete(5);
        let sig =
            heat_trace_signature_with(&g, &default_timescales(), Normalization::Complete).unwrap();
        assert!(sig.values.iter().all(|&v| (v - 1.0).abs() < 1e-9));
        let sig =
            heat_trace_signature_with(&Graph::empty(3), &[0.5], Normalization::Empty).unwrap();
        assert!((sig.values[0] - 1.0).abs() < 1e-12);
    }
}
