//! Parallel drivers over snapshots and repetitions.
//!
//! Work items are independent and results are collected in index order, so
//! outputs do not depend on the thread count.

use graphon_core::experiments::{
    aggregate, fit_spectra, padded_spectrum, repetition_seed, snapshot_sequence, ExperimentConfig,
    MseTable, Repetition,
};
use graphon_core::{GrowingGraph, SpectrumResult};
use rayon::prelude::*;

use crate::error::{CliError, Result};

/// Run `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Config("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Same result as `graphon_core::experiments::run_repetition`, with the
/// snapshot spectra computed in parallel.
pub fn run_repetition(
    g_all: &GrowingGraph,
    cfg: &ExperimentConfig,
    r: usize,
) -> Result<Repetition> {
    let seed = repetition_seed(cfg.seed, r);
    let seq = snapshot_sequence(g_all, cfg.batch, cfg.steps, seed)?;
    let spectra = seq
        .snapshots
        .par_iter()
        .zip(seq.stats.par_iter())
        .filter(|(_, s)| s.num_edges > 0)
        .map(|(g, s)| {
            let mut spec = padded_spectrum(g, cfg.k)?;
            spec.tag = format!("step{}", s.step);
            Ok(spec)
        })
        .collect::<graphon_core::Result<Vec<SpectrumResult>>>()?;
    let fits = fit_spectra(&spectra, &cfg.j_values())?;
    Ok(Repetition {
        index: r,
        seed,
        stats: seq.stats,
        spectra,
        fits,
    })
}

pub fn mse_table(
    g_all: &GrowingGraph,
    cfg: &ExperimentConfig,
) -> Result<(MseTable, Vec<Repetition>)> {
    let reps = (0..cfg.repetitions)
        .into_par_iter()
        .map(|r| run_repetition(g_all, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    Ok((aggregate(&reps, &cfg.j_values())?, reps))
}

/// Spectra of many graphs in parallel, tagged by `tags`.
pub fn tagged_spectra(
    graphs: &[GrowingGraph],
    tags: &[String],
    k: usize,
) -> Result<Vec<SpectrumResult>> {
    graphs
        .par_iter()
        .zip(tags.par_iter())
        .filter(|(g, _)| g.num_vertices() > 0)
        .map(|(g, tag)| {
            let mut s = padded_spectrum(g, k)?;
            s.tag = tag.clone();
            Ok(s)
        })
        .collect()
}
