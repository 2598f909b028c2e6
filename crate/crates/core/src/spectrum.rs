//! Dense symmetric eigenvalue spectra.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::graph::Graph;

/// Eigenvalues of the 0/1 adjacency matrix, ascending.
pub fn adjacency_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    sorted_eigenvalues(a)
}

/// Eigenvalues of `I - D^{-1/2} A D^{-1/2}`, ascending.
///
/// Degree-0 nodes get an all-zero row and column, so each isolated node adds
/// an eigenvalue of 0.
pub fn normalized_laplacian_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .into_iter()
        .map(|d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
        .collect();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        if g.degree(u) > 0 {
            l[(u, u)] = 1.0;
        }
    }
    for &(u, v) in g.edges() {
        let w = -inv_sqrt[u] * inv_sqrt[v];
        l[(u, v)] = w;
        l[(v, u)] = w;
    }
    sorted_eigenvalues(l)
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}
