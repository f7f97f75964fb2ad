//! Growing random-subgraph sequences and zero-intercept fits of adjacency
//! eigenvalues against `sqrt|E|` and `|V|`.
//!
//! Snapshot `n` is the subgraph induced by the first `n · batch` vertices of
//! a seeded uniform ordering of the source graph, with isolated vertices
//! removed. Each repetition uses its own ordering.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{bail, Error, Result};
use crate::graph::GrowingGraph;
use crate::rng::{self, DOMAIN_REPETITION, DOMAIN_SNAPSHOT};
use crate::spectral::{self, SpectrumResult};

/// Per-snapshot counts after pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SnapshotStats {
    /// 1-based step index.
    pub step: usize,
    /// Vertices drawn so far, before pruning.
    pub drawn: usize,
    pub num_vertices: usize,
    pub num_edges: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSequence {
    pub snapshots: Vec<GrowingGraph>,
    pub stats: Vec<SnapshotStats>,
    /// Source vertices in draw order; batch `n` is `order[(n-1)·batch .. n·batch]`.
    pub order: Vec<usize>,
    pub batch: usize,
    pub steps: usize,
    pub seed: u64,
}

/// Draw `batch · steps` vertices of `g_all` uniformly without replacement
/// and build the pruned induced snapshots.
pub fn snapshot_sequence(
    g_all: &GrowingGraph,
    batch: usize,
    steps: usize,
    seed: u64,
) -> Result<SnapshotSequence> {
    let n = g_all.num_vertices();
    let needed = batch
        .checked_mul(steps)
        .ok_or_else(|| Error::Domain(format!("batch {batch} × steps {steps} overflows")))?;
    if batch == 0 || steps == 0 {
        bail!(Domain, "batch and steps must be positive");
    }
    if needed > n {
        return Err(Error::InsufficientVertices {
            needed,
            available: n,
        });
    }
    // A forward Fisher-Yates prefix: the first draws do not depend on how
    // many steps are requested, so longer runs extend shorter ones.
    let mut gen = rng::stream(seed, DOMAIN_SNAPSHOT, 0);
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..needed {
        let j = gen.random_range(i..n);
        order.swap(i, j);
    }
    order.truncate(needed);
    let mut keep = alloc::vec![false; n];
    let mut snapshots = Vec::with_capacity(steps);
    let mut stats = Vec::with_capacity(steps);
    for step in 1..=steps {
        for &v in &order[(step - 1) * batch..step * batch] {
            keep[v] = true;
        }
        let g = g_all.induced(&keep).prune_isolated();
        stats.push(SnapshotStats {
            step,
            drawn: step * batch,
            num_vertices: g.num_vertices(),
            num_edges: g.num_edges(),
        });
        snapshots.push(g);
    }
    Ok(SnapshotSequence {
        snapshots,
        stats,
        order,
        batch,
        steps,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predictor {
    /// `x = sqrt(|E_n|)`.
    SqrtEdges,
    /// `x = |V_n|`.
    NumVertices,
}

impl Predictor {
    pub const ALL: [Predictor; 2] = [Predictor::SqrtEdges, Predictor::NumVertices];

    pub fn id(&self) -> &'static str {
        match self {
            Self::SqrtEdges => "sqrt_edges",
            Self::NumVertices => "num_vertices",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.id() == s)
    }

    pub fn value(&self, num_vertices: usize, num_edges: usize) -> f64 {
        match self {
            Self::SqrtEdges => (num_edges as f64).sqrt(),
            Self::NumVertices => num_vertices as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub mse: f64,
    pub n_points: usize,
}

/// Least squares through the origin: `slope = Σxy / Σx²`,
/// `mse = mean((y − slope·x)²)`.
pub fn fit_through_origin(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        bail!(Domain, "{} x values but {} y values", xs.len(), ys.len());
    }
    if xs.len() < 2 {
        bail!(Domain, "a fit needs at least two points, got {}", xs.len());
    }
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    if !(sxx > 0.0) {
        bail!(Degenerate, "all predictor values are zero");
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let slope = sxy / sxx;
    let mse = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x).powi(2))
        .sum::<f64>()
        / xs.len() as f64;
    Ok(LinearFit {
        slope,
        mse,
        n_points: xs.len(),
    })
}

/// Signed indices `1..=k` followed by `-1..=-k`.
pub fn default_j_values(k: usize) -> Vec<i64> {
    let k = k as i64;
    (1..=k).chain((1..=k).map(|j| -j)).collect()
}

/// Spectra of the snapshots that have at least one edge, tagged
/// `step{n}`. Tails are zero-padded when a snapshot is too small to have
/// `k` eigenvalues of each sign.
pub fn snapshot_spectra(seq: &SnapshotSequence, k: usize) -> Result<Vec<SpectrumResult>> {
    seq.snapshots
        .iter()
        .zip(&seq.stats)
        .filter(|(_, s)| s.num_edges > 0)
        .map(|(g, s)| {
            let mut r = padded_spectrum(g, k)?;
            r.tag = format!("step{}", s.step);
            Ok(r)
        })
        .collect()
}

/// Top-`k` and bottom-`k` eigenvalues, clamped to the vertex count and
/// padded with zeros.
pub fn padded_spectrum(g: &GrowingGraph, k: usize) -> Result<SpectrumResult> {
    let n = g.num_vertices();
    let mut r = if 2 * k <= n {
        spectral::adjacency_eigenvalues(g, k, k)?
    } else {
        // Too few vertices for k of each sign: split the full spectrum.
        let all = spectral::full_spectrum(g)?;
        SpectrumResult {
            num_vertices: n,
            num_edges: g.num_edges(),
            positive_tail: all
                .iter()
                .rev()
                .copied()
                .filter(|&x| x > spectral::ZERO_EIGENVALUE)
                .take(k)
                .collect(),
            negative_tail: all
                .iter()
                .copied()
                .filter(|&x| x < -spectral::ZERO_EIGENVALUE)
                .take(k)
                .collect(),
            ..Default::default()
        }
    };
    r.positive_tail.resize(k, 0.0);
    r.negative_tail.resize(k, 0.0);
    if r.num_edges > 0 {
        r = spectral::scaled_frequencies(r)?;
    }
    Ok(r)
}

/// Fit of one eigenvalue index against one predictor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexFit {
    pub j: i64,
    pub predictor: Predictor,
    pub fit: LinearFit,
}

/// Fit `λ_j` against each predictor across the given spectra.
pub fn fit_spectra(spectra: &[SpectrumResult], j_values: &[i64]) -> Result<Vec<IndexFit>> {
    let mut out = Vec::with_capacity(j_values.len() * 2);
    for &j in j_values {
        let ys: Vec<f64> = spectra.iter().map(|s| s.lambda(j).unwrap_or(0.0)).collect();
        for predictor in Predictor::ALL {
            let xs: Vec<f64> = spectra
                .iter()
                .map(|s| predictor.value(s.num_vertices, s.num_edges))
                .collect();
            out.push(IndexFit {
                j,
                predictor,
                fit: fit_through_origin(&xs, &ys)?,
            });
        }
    }
    Ok(out)
}

/// Everything one repetition produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Repetition {
    pub index: usize,
    pub seed: u64,
    pub stats: Vec<SnapshotStats>,
    pub spectra: Vec<SpectrumResult>,
    pub fits: Vec<IndexFit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub batch: usize,
    pub steps: usize,
    pub repetitions: usize,
    /// Eigenvalues per tail.
    pub k: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn j_values(&self) -> Vec<i64> {
        default_j_values(self.k)
    }
}

/// Seed of repetition `r`.
pub fn repetition_seed(seed: u64, r: usize) -> u64 {
    rng::derive_seed(seed, DOMAIN_REPETITION, r as u64)
}

pub fn run_repetition(
    g_all: &GrowingGraph,
    cfg: &ExperimentConfig,
    r: usize,
) -> Result<Repetition> {
    let seed = repetition_seed(cfg.seed, r);
    let seq = snapshot_sequence(g_all, cfg.batch, cfg.steps, seed)?;
    let spectra = snapshot_spectra(&seq, cfg.k)?;
    let fits = fit_spectra(&spectra, &cfg.j_values())?;
    Ok(Repetition {
        index: r,
        seed,
        stats: seq.stats,
        spectra,
        fits,
    })
}

/// One row of the MSE table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MseRow {
    pub j: i64,
    pub mse_sqrt_edges: f64,
    pub mse_num_vertices: f64,
    pub slope_sqrt_edges: f64,
    pub slope_num_vertices: f64,
}

impl MseRow {
    /// `MSE(|V|) / MSE(sqrt|E|)`; above 1 when the edge predictor fits better.
    pub fn ratio(&self) -> f64 {
        self.mse_num_vertices / self.mse_sqrt_edges
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MseTable {
    pub rows: Vec<MseRow>,
    pub repetitions: usize,
}

impl MseTable {
    pub fn row(&self, j: i64) -> Option<&MseRow> {
        self.rows.iter().find(|r| r.j == j)
    }
}

/// Average MSE and slope over repetitions for each `j` and predictor.
pub fn aggregate(reps: &[Repetition], j_values: &[i64]) -> Result<MseTable> {
    if reps.is_empty() {
        bail!(Domain, "no repetitions to aggregate");
    }
    let count = reps.len() as f64;
    let mean = |j: i64, p: Predictor, slope: bool| -> Result<f64> {
        let mut total = 0.0;
        for rep in reps {
            let f = rep
                .fits
                .iter()
                .find(|f| f.j == j && f.predictor == p)
                .ok_or_else(|| {
                    Error::Computation(format!("repetition {} lacks a fit for j = {j}", rep.index))
                })?;
            total += if slope { f.fit.slope } else { f.fit.mse };
        }
        Ok(total / count)
    };
    let rows = j_values
        .iter()
        .map(|&j| {
            Ok(MseRow {
                j,
                mse_sqrt_edges: mean(j, Predictor::SqrtEdges, false)?,
                mse_num_vertices: mean(j, Predictor::NumVertices, false)?,
                slope_sqrt_edges: mean(j, Predictor::SqrtEdges, true)?,
                slope_num_vertices: mean(j, Predictor::NumVertices, true)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(MseTable {
        rows,
        repetitions: reps.len(),
    })
}

/// Sequential driver: run every repetition and aggregate.
pub fn mse_table(
    g_all: &GrowingGraph,
    cfg: &ExperimentConfig,
) -> Result<(MseTable, Vec<Repetition>)> {
    let reps = (0..cfg.repetitions)
        .map(|r| run_repetition(g_all, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    Ok((aggregate(&reps, &cfg.j_values())?, reps))
}
