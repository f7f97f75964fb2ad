//! Two-tailed adjacency spectra and scaled graph frequencies.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{bail, Result};
use crate::graph::GrowingGraph;
use crate::linalg::{self, KrylovOptions};
use crate::rng::{self, DOMAIN_KRYLOV};

/// Graphs with at most this many vertices use the dense solver.
pub const DENSE_THRESHOLD: usize = 2000;

/// Eigenvalues this close to zero are reported as zero.
pub const ZERO_EIGENVALUE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    /// Dense up to [`DENSE_THRESHOLD`] vertices, Krylov above.
    #[default]
    Auto,
    Dense,
    Iterative,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumResult {
    pub tag: String,
    pub num_vertices: usize,
    pub num_edges: usize,
    /// `λ₁ ≥ λ₂ ≥ … ≥ 0`, zero-padded to the requested length.
    pub positive_tail: Vec<f64>,
    /// `λ₋₁ ≤ λ₋₂ ≤ … ≤ 0`, zero-padded to the requested length.
    pub negative_tail: Vec<f64>,
    /// `positive_tail / sqrt(2 |E|)`; empty when the graph has no edges.
    pub scaled_positive: Vec<f64>,
    pub scaled_negative: Vec<f64>,
}

impl SpectrumResult {
    /// `λ_j` for a signed index `j` (`±1, ±2, …`), if computed.
    pub fn lambda(&self, j: i64) -> Option<f64> {
        tail_entry(&self.positive_tail, &self.negative_tail, j)
    }

    pub fn scaled(&self, j: i64) -> Option<f64> {
        tail_entry(&self.scaled_positive, &self.scaled_negative, j)
    }

    /// Signed indices covered by the tails, `1..=k_pos` then `-1..=-k_neg`.
    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        let p = self.positive_tail.len() as i64;
        let n = self.negative_tail.len() as i64;
        (1..=p).chain((1..=n).map(|j| -j))
    }

    pub fn max_abs(&self) -> f64 {
        self.positive_tail
            .iter()
            .chain(&self.negative_tail)
            .fold(0.0, |a, x| a.max(x.abs()))
    }
}

fn tail_entry(pos: &[f64], neg: &[f64], j: i64) -> Option<f64> {
    match j {
        0 => None,
        j if j > 0 => pos.get(j as usize - 1).copied(),
        j => neg.get((-j) as usize - 1).copied(),
    }
}

/// The `k_pos` largest and `k_neg` smallest adjacency eigenvalues of `g`,
/// with the solver picked by size.
pub fn adjacency_eigenvalues(
    g: &GrowingGraph,
    k_pos: usize,
    k_neg: usize,
) -> Result<SpectrumResult> {
    adjacency_eigenvalues_with(g, k_pos, k_neg, Solver::Auto)
}

pub fn adjacency_eigenvalues_with(
    g: &GrowingGraph,
    k_pos: usize,
    k_neg: usize,
    solver: Solver,
) -> Result<SpectrumResult> {
    let n = g.num_vertices();
    if n == 0 {
        bail!(Domain, "spectrum of an empty graph");
    }
    if k_pos + k_neg > n {
        bail!(
            Domain,
            "requested {k_pos} + {k_neg} eigenvalues of a {n}-vertex graph"
        );
    }
    let dense = match solver {
        Solver::Auto => n <= DENSE_THRESHOLD,
        Solver::Dense => true,
        Solver::Iterative => false,
    };
    let (top, bottom) = if dense {
        let values = full_spectrum(g)?;
        let top: Vec<f64> = values.iter().rev().take(k_pos).copied().collect();
        let bottom: Vec<f64> = values.iter().take(k_neg).copied().collect();
        (top, bottom)
    } else {
        iterative_tails(g, k_pos, k_neg)?
    };
    let mut positive_tail: Vec<f64> = top.into_iter().filter(|&x| x > ZERO_EIGENVALUE).collect();
    let mut negative_tail: Vec<f64> = bottom
        .into_iter()
        .filter(|&x| x < -ZERO_EIGENVALUE)
        .collect();
    positive_tail.resize(k_pos, 0.0);
    negative_tail.resize(k_neg, 0.0);
    let mut result = SpectrumResult {
        tag: String::new(),
        num_vertices: n,
        num_edges: g.num_edges(),
        positive_tail,
        negative_tail,
        ..Default::default()
    };
    if result.num_edges > 0 {
        result = scaled_frequencies(result)?;
    }
    Ok(result)
}

/// Every adjacency eigenvalue, ascending, from the dense solver.
pub fn full_spectrum(g: &GrowingGraph) -> Result<Vec<f64>> {
    let n = g.num_vertices();
    if n == 0 {
        bail!(Domain, "spectrum of an empty graph");
    }
    linalg::symmetric_eigenvalues(g.dense_adjacency(), n)
}

fn iterative_tails(g: &GrowingGraph, k_pos: usize, k_neg: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = g.num_vertices();
    let seed = rng::derive_seed(n as u64, DOMAIN_KRYLOV, g.num_edges() as u64);
    let opts = KrylovOptions {
        seed,
        norm_hint: Some((2.0 * g.num_edges() as f64).sqrt()),
        ..KrylovOptions::default()
    };
    let top = linalg::largest_eigenvalues(n, k_pos, |x, y| g.adjacency_matvec(x, y), &opts)?.values;
    let bottom = linalg::largest_eigenvalues(
        n,
        k_neg,
        |x, y| {
            g.adjacency_matvec(x, y);
            y.iter_mut().for_each(|v| *v = -*v);
        },
        &opts,
    )?
    .values
    .into_iter()
    .map(|x| -x)
    .collect();
    Ok((top, bottom))
}

/// Fill the scaled lists with `tails / sqrt(2 |E|)`.
pub fn scaled_frequencies(mut s: SpectrumResult) -> Result<SpectrumResult> {
    if s.num_edges == 0 {
        bail!(Degenerate, "scaled frequencies need at least one edge");
    }
    let norm = (2.0 * s.num_edges as f64).sqrt();
    s.scaled_positive = s.positive_tail.iter().map(|l| l / norm).collect();
    s.scaled_negative = s.negative_tail.iter().map(|l| l / norm).collect();
    Ok(s)
}

/// `(h(C₄) / |j|)^{1/4}`, the bound on the `|j|`-th scaled frequency
/// magnitude. Returns infinity for `j = 0`, which has no meaning as an index.
pub fn c4_tail_bound(h_c4: f64, j: i64) -> f64 {
    if j == 0 {
        return f64::INFINITY;
    }
    (h_c4 / j.unsigned_abs() as f64).powf(0.25)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> GrowingGraph {
        GrowingGraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn small_graph_spectra() {
        let s = adjacency_eigenvalues(&complete(3), 1, 2).unwrap();
        assert!((s.positive_tail[0] - 2.0).abs() < 1e-12);
        assert!((s.negative_tail[0] + 1.0).abs() < 1e-12);
        assert!((s.negative_tail[1] + 1.0).abs() < 1e-12);
        assert!((s.scaled_positive[0] - 2.0 / 6f64.sqrt()).abs() < 1e-12);

        let s = adjacency_eigenvalues(&complete(2), 1, 1).unwrap();
        assert!((s.positive_tail[0] - 1.0).abs() < 1e-12);
        assert!((s.negative_tail[0] + 1.0).abs() < 1e-12);
        assert!((s.scaled_positive[0] - 0.5f64.sqrt()).abs() < 1e-12);

        let star = GrowingGraph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let s = adjacency_eigenvalues(&star, 2, 2).unwrap();
        assert!((s.positive_tail[0] - 2.0).abs() < 1e-12);
        assert!((s.negative_tail[0] + 2.0).abs() < 1e-12);
        // The other three eigenvalues are 0 and are padded, not reported.
        assert_eq!(s.positive_tail[1], 0.0);
        assert_eq!(s.negative_tail[1], 0.0);
    }

    #[test]
    fn preconditions() {
        assert!(adjacency_eigenvalues(&GrowingGraph::empty(0), 1, 0).is_err());
        assert!(adjacency_eigenvalues(&complete(3), 2, 2).is_err());
        let s = adjacency_eigenvalues(&GrowingGraph::empty(3), 1, 1).unwrap();
        assert!(s.scaled_positive.is_empty());
        assert!(scaled_frequencies(s).is_err());
    }

    #[test]
    fn c4_bound_examples() {
        assert!((c4_tail_bound(16.0, 1) - 2.0).abs() < 1e-15);
        assert!((c4_tail_bound(16.0, -16) - 1.0).abs() < 1e-15);
        assert!(c4_tail_bound(1.0, 0).is_infinite());
    }

    #[test]
    fn example1_scaled_top() {
        let g = crate::sampler::example1_graph(100, 0.5).unwrap();
        let s = adjacency_eigenvalues(&g, 1, 1).unwrap();
        assert!((s.scaled_positive[0] - 30.0 / 930f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn signed_indexing() {
        let s = adjacency_eigenvalues(&complete(4), 1, 2).unwrap();
        assert_eq!(s.indices().collect::<Vec<_>>(), alloc::vec![1, -1, -2]);
        assert_eq!(s.lambda(0), None);
        assert!((s.lambda(1).unwrap() - 3.0).abs() < 1e-12);
        assert!((s.lambda(-2).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(s.lambda(3), None);
    }
}
