//! Command-line definitions and the six commands.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use graphon_core::cutmetric::{
    cut_norm_approx, cut_norm_exact, stretched_cut_distance_upper, unit_square_indicator,
    AlignStrategy, CutNormEstimate, DistanceOptions, StepFunction, DEFAULT_ALIGN_RESTARTS,
    DEFAULT_CUT_RESTARTS, MAX_EXACT_BLOCKS,
};
use graphon_core::experiments::{padded_spectrum, ExperimentConfig};
use graphon_core::graphon::canonical_graphon;
use graphon_core::homomorphism::{
    closed_walks, cycle_density_from_spectrum, h_density_graph, hom_count_brute, DensityPoint,
    MotifGraph,
};
use graphon_core::sampler::ProcessState;
use graphon_core::spectral::{full_spectrum, DENSE_THRESHOLD};
use graphon_core::{GeneralizedGraphon, GrowingGraph};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::{
    config_object, read_json, resolve, ConvergeConfig, CutnormConfig, ExperimentRunConfig,
    GenerateConfig, GraphonConfig, HomcheckConfig, SpectrumConfig,
};
use crate::edgelist::{format_edge_list, read_edge_list};
use crate::error::{CliError, Result};
use crate::output::{
    density_csv, fits_csv, sha256_hex, snapshots_csv, spectra_csv, table_csv, vertices_csv,
    InputRecord, OutputDir, RunRecord,
};
use crate::pipeline;

#[derive(Debug, Parser)]
#[command(
    name = "graphon",
    version,
    about = "Sample graphon processes, compute adjacency spectra, homomorphism densities and cut distances"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Run config as JSON: a command config, a bare graphon config, or a
    /// previous run.json. Flags override its keys.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,

    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "GRAPHON_THREADS")]
    pub threads: Option<usize>,

    /// Print nothing on success.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow the process from a graphon to time T and write the pruned graph.
    Generate(GenerateArgs),
    /// Two-tailed adjacency spectrum of an edge list.
    Spectrum(SpectrumArgs),
    /// Cycle densities and scaled eigenvalues along a growing process.
    Converge(ConvergeArgs),
    /// Cross-check homomorphism counts and cycle densities of one graph.
    Homcheck(HomcheckArgs),
    /// Cut norm of a step graphon, or an upper bound on a stretched cut distance.
    Cutnorm(CutnormArgs),
    /// Random-subgraph experiment: fit eigenvalues against sqrt|E| and |V|.
    Experiment(ExperimentArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Generate(_) => "generate",
            Self::Spectrum(_) => "spectrum",
            Self::Converge(_) => "converge",
            Self::Homcheck(_) => "homcheck",
            Self::Cutnorm(_) => "cutnorm",
            Self::Experiment(_) => "experiment",
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub time: Option<f64>,
    /// Block sampler for step kernels.
    #[arg(long)]
    pub blocked: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,
    /// Eigenvalues per tail [default: 5].
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// Ascending snapshot times, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<f64>>,
    /// Eigenvalues per tail [default: 5].
    #[arg(long)]
    pub k: Option<usize>,
    /// Cycle lengths for the densities [default: 3,4,5].
    #[arg(long, value_delimiter = ',')]
    pub cycles: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct HomcheckArgs {
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,
    /// With a graphon config: grow to this time and check the pruned graph.
    #[arg(long)]
    pub time: Option<f64>,
    /// Cycle lengths [default: 3,4,5].
    #[arg(long, value_delimiter = ',')]
    pub cycles: Option<Vec<usize>>,
    /// Work budget of the brute-force count [default: 1e9].
    #[arg(long)]
    pub budget: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CutnormArgs {
    /// First operand as an edge list (its canonical graphon); otherwise the
    /// graphon from --config.
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,
    /// Second operand for distance modes as an edge list.
    #[arg(long, value_name = "PATH")]
    pub against_edges: Option<PathBuf>,
    /// Second operand for distance modes as a graphon config. Without either
    /// the unit-square indicator is used.
    #[arg(long, value_name = "PATH")]
    pub against_config: Option<PathBuf>,
    /// exact | approx | identity | degree-sorted | local-search [default: exact].
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub align_restarts: Option<usize>,
    /// Grid for discretizing analytic kernels [default: 64].
    #[arg(long)]
    pub cells: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,
    /// Vertices drawn per step [default: 200].
    #[arg(long)]
    pub batch: Option<usize>,
    /// Number of snapshots [default: 90].
    #[arg(long)]
    pub steps: Option<usize>,
    /// Repetitions with independent orderings [default: 20].
    #[arg(long)]
    pub reps: Option<usize>,
    /// Eigenvalues per tail [default: 5].
    #[arg(long)]
    pub k: Option<usize>,
}

fn val(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("plain values serialize")
}

fn flag<T: serde::Serialize>(x: &Option<T>) -> Option<Value> {
    x.as_ref().map(val)
}

/// What a finished run wrote.
#[derive(Debug)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub files: Vec<String>,
    /// One-line human summary.
    pub message: String,
}

pub fn run(cli: &Cli) -> Result<RunSummary> {
    let name = cli.command.name();
    let base = match &cli.config {
        Some(p) => config_object(read_json(p)?, name, p)?,
        None => Map::new(),
    };
    let mut out = OutputDir::new(&cli.out);
    let seed = flag(&cli.seed);
    let message = pipeline::with_threads(cli.threads, || match &cli.command {
        Command::Generate(a) => generate(base, seed, a, &mut out),
        Command::Spectrum(a) => spectrum(base, a, &mut out),
        Command::Converge(a) => converge(base, seed, a, &mut out),
        Command::Homcheck(a) => homcheck(base, seed, a, &mut out),
        Command::Cutnorm(a) => cutnorm(base, seed, a, &mut out),
        Command::Experiment(a) => experiment(base, seed, a, &mut out),
    })??;
    Ok(RunSummary {
        out_dir: out.root().to_path_buf(),
        files: out.written().to_vec(),
        message,
    })
}

fn finish(out: &mut OutputDir, mut record: RunRecord) -> Result<()> {
    record.outputs = out.written().to_vec();
    record.outputs.push("run.json".into());
    out.write_json("run.json", &record)?;
    Ok(())
}

fn input_record(path: &Path, bytes: &[u8], g: &GrowingGraph) -> InputRecord {
    InputRecord {
        path: path.display().to_string(),
        sha256: sha256_hex(bytes),
        num_vertices: g.num_vertices(),
        num_edges: g.num_edges(),
    }
}

fn generate(
    base: Map<String, Value>,
    seed: Option<Value>,
    a: &GenerateArgs,
    out: &mut OutputDir,
) -> Result<String> {
    let cfg: GenerateConfig = resolve(
        base,
        vec![
            ("time", flag(&a.time)),
            ("seed", seed),
            ("blocked", a.blocked.then(|| val(true))),
        ],
        vec![("seed", val(0)), ("blocked", val(false))],
    )?;
    let w = cfg.graphon.to_graphon()?;
    let state = ProcessState::new(w, cfg.seed)?;
    let full = if cfg.blocked {
        state.sample_edges_blocked(cfg.time)?
    } else {
        let mut state = state;
        state.grow(cfg.time)?
    };
    let g = full.prune_isolated();
    let record = RunRecord::new("generate", &cfg)?;
    let header = [
        "graphon generate".to_string(),
        format!("seed {}", cfg.seed),
        format!("time {}", cfg.time),
        format!("config_hash {}", record.config_hash),
        format!("vertices {} edges {}", g.num_vertices(), g.num_edges()),
    ];
    out.write("edges.txt", format_edge_list(&g, &header).as_bytes())?;
    let points = g.points().unwrap_or(&[]);
    out.write("vertices.csv", &vertices_csv(g.ids(), points)?)?;
    finish(out, record)?;
    Ok(format!(
        "generated {} vertices and {} edges at t = {}",
        g.num_vertices(),
        g.num_edges(),
        cfg.time
    ))
}

fn spectrum(base: Map<String, Value>, a: &SpectrumArgs, out: &mut OutputDir) -> Result<String> {
    let cfg: SpectrumConfig = resolve(
        base,
        vec![("edges", flag(&a.edges)), ("k", flag(&a.k))],
        vec![("k", val(5))],
    )?;
    let (list, bytes) = read_edge_list(&cfg.edges)?;
    let g = &list.graph;
    let mut s = padded_spectrum(g, cfg.k)?;
    s.tag = cfg
        .edges
        .file_stem()
        .map_or_else(|| "input".to_string(), |x| x.to_string_lossy().into_owned());
    out.write("spectra.csv", &spectra_csv(std::slice::from_ref(&s))?)?;
    let mut record = RunRecord::new("spectrum", &cfg)?;
    record.inputs.push(input_record(&cfg.edges, &bytes, g));
    finish(out, record)?;
    Ok(format!(
        "lambda_1 = {}, scaled {}",
        s.positive_tail.first().copied().unwrap_or(0.0),
        s.scaled_positive.first().copied().unwrap_or(0.0)
    ))
}

fn check_cycles(cycles: &[usize]) -> Result<()> {
    if let Some(k) = cycles.iter().find(|&&k| !(3..=10).contains(&k)) {
        return Err(CliError::Config(format!("cycle length {k} outside 3..=10")));
    }
    Ok(())
}

/// Absolute tolerance on limit eigenvalues and densities. Nyström on smooth
/// kernels over long supports reaches about 1e-5 at its largest grid.
const LIMIT_TOL: f64 = 1e-4;

/// Limit values of the graphon the scaled quantities should approach.
fn graphon_limits(w: &GeneralizedGraphon, k: usize, cycles: &[usize]) -> Value {
    let l1 = match w.l1_norm() {
        Ok(x) => x,
        Err(e) => return json!({ "error": e.to_string() }),
    };
    let spec = match w.operator_spectrum(k, k, LIMIT_TOL) {
        Ok(s) => s,
        Err(e) => return json!({ "l1_norm": l1, "error": e.to_string() }),
    };
    let root = l1.sqrt();
    let scaled = |v: &[f64]| v.iter().map(|x| x / root).collect::<Vec<_>>();
    let densities: Vec<Value> = cycles
        .iter()
        .map(|&c| match w.h_density_graphon(c as u32, &spec, LIMIT_TOL) {
            Ok(d) => json!({ "k": c, "value": d.value, "truncation_bound": d.truncation_bound }),
            Err(e) => json!({ "k": c, "error": e.to_string() }),
        })
        .collect();
    json!({
        "l1_norm": l1,
        "eigenvalues_positive": spec.positive_tail,
        "eigenvalues_negative": spec.negative_tail,
        "scaled_positive": scaled(&spec.positive_tail),
        "scaled_negative": scaled(&spec.negative_tail),
        "discretization_error_estimate": spec.discretization_error_estimate,
        "cycle_densities": densities,
    })
}

fn converge(
    base: Map<String, Value>,
    seed: Option<Value>,
    a: &ConvergeArgs,
    out: &mut OutputDir,
) -> Result<String> {
    let cfg: ConvergeConfig = resolve(
        base,
        vec![
            ("times", flag(&a.times)),
            ("k", flag(&a.k)),
            ("cycles", flag(&a.cycles)),
            ("seed", seed),
        ],
        vec![("k", val(5)), ("cycles", val([3, 4, 5])), ("seed", val(0))],
    )?;
    check_cycles(&cfg.cycles)?;
    if cfg.times.iter().any(|t| !t.is_finite()) || cfg.times.windows(2).any(|w| w[0] > w[1]) {
        return Err(CliError::Config("times must be ascending".into()));
    }
    let w = cfg.graphon.to_graphon()?;
    let mut state = ProcessState::new(w.clone(), cfg.seed)?;
    let mut snapshots = Vec::with_capacity(cfg.times.len());
    for &t in &cfg.times {
        snapshots.push(state.grow(t)?.prune_isolated());
    }
    let jobs: Vec<(usize, usize)> = (0..snapshots.len())
        .flat_map(|i| cfg.cycles.iter().map(move |&c| (i, c)))
        .collect();
    let density: Vec<DensityPoint> = jobs
        .par_iter()
        .map(|&(i, c)| {
            let g = &snapshots[i];
            let h = if g.num_edges() == 0 {
                None
            } else {
                Some(h_density_graph(&MotifGraph::cycle(c)?, g)?)
            };
            Ok(DensityPoint {
                t: cfg.times[i],
                num_vertices: g.num_vertices(),
                num_edges: g.num_edges(),
                k: c,
                h,
            })
        })
        .collect::<graphon_core::Result<_>>()?;
    let tags: Vec<String> = cfg.times.iter().map(|t| format!("t={t}")).collect();
    let spectra = pipeline::tagged_spectra(&snapshots, &tags, cfg.k)?;
    out.write("density.csv", &density_csv(&density)?)?;
    out.write("spectra.csv", &spectra_csv(&spectra)?)?;
    out.write_json("limits.json", &graphon_limits(&w, cfg.k, &cfg.cycles))?;
    finish(out, RunRecord::new("converge", &cfg)?)?;
    let last = snapshots.last().map_or(0, |g| g.num_vertices());
    Ok(format!(
        "{} snapshots, last with {last} vertices",
        snapshots.len()
    ))
}

fn homcheck(
    base: Map<String, Value>,
    seed: Option<Value>,
    a: &HomcheckArgs,
    out: &mut OutputDir,
) -> Result<String> {
    let cfg: HomcheckConfig = resolve(
        base,
        vec![
            ("edges", flag(&a.edges)),
            ("time", flag(&a.time)),
            ("cycles", flag(&a.cycles)),
            ("budget", flag(&a.budget)),
            ("seed", seed),
        ],
        vec![
            ("cycles", val([3, 4, 5])),
            ("budget", val(1e9)),
            ("seed", val(0)),
            ("edges", Value::Null),
            ("graphon", Value::Null),
            ("time", Value::Null),
        ],
    )?;
    check_cycles(&cfg.cycles)?;
    let mut record = RunRecord::new("homcheck", &cfg)?;
    let g = match (&cfg.edges, &cfg.graphon, cfg.time) {
        (Some(path), None, _) => {
            let (list, bytes) = read_edge_list(path)?;
            record.inputs.push(input_record(path, &bytes, &list.graph));
            list.graph
        }
        (None, Some(gc), Some(t)) => ProcessState::new(gc.to_graphon()?, cfg.seed)?
            .grow(t)?
            .prune_isolated(),
        (None, Some(_), None) => {
            return Err(CliError::Config("a graphon input needs --time".into()))
        }
        _ => {
            return Err(CliError::Config(
                "give exactly one of --edges or a graphon config".into(),
            ))
        }
    };
    if g.num_edges() == 0 {
        return Err(CliError::Config(
            "the graph has no edges; densities are undefined".into(),
        ));
    }
    let n = g.num_vertices();
    let spectrum = if n <= DENSE_THRESHOLD {
        Some(full_spectrum(&g)?)
    } else {
        None
    };
    let canonical = if n <= DENSE_THRESHOLD {
        let w = canonical_graphon(&g)?;
        let s = w.operator_spectrum(n, n, 1e-9)?;
        Some((w, s))
    } else {
        None
    };
    let norm = (2.0 * g.num_edges() as f64).sqrt();
    let mut all_agree = true;
    let mut checks = Vec::new();
    for &k in &cfg.cycles {
        let walks = closed_walks(&g, k)?;
        let h = walks as f64 / norm.powi(k as i32);
        let brute = match hom_count_brute(&MotifGraph::cycle(k)?, &g, cfg.budget) {
            Ok(x) => Some(x),
            Err(graphon_core::Error::Budget { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let power = spectrum
            .as_ref()
            .map(|eigs| cycle_density_from_spectrum(eigs, g.num_edges(), k as u32))
            .transpose()?;
        let canon = canonical
            .as_ref()
            .map(|(w, s)| w.h_density_graphon(k as u32, s, 1e-6).map(|d| d.value))
            .transpose()?;
        let agree = brute.is_none_or(|b| b == walks)
            && power.is_none_or(|p| (p - h).abs() <= 1e-8)
            && canon.is_none_or(|c| (c - h).abs() <= 1e-9 * h.abs() + 1e-14);
        all_agree &= agree;
        checks.push(json!({
            "k": k,
            "hom_closed_walks": walks.to_string(),
            "hom_brute_force": brute.map(|b| b.to_string()),
            "h": h,
            "h_power_sum": power,
            "h_canonical": canon,
            "agree": agree,
        }));
    }
    out.write_json(
        "homcheck.json",
        &json!({
            "num_vertices": n,
            "num_edges": g.num_edges(),
            "checks": checks,
            "agree": all_agree,
        }),
    )?;
    finish(out, record)?;
    if !all_agree {
        return Err(CliError::Check(format!(
            "homomorphism counts disagree; see {}",
            out.root().join("homcheck.json").display()
        )));
    }
    Ok(format!(
        "{} cycle lengths checked on {n} vertices",
        cfg.cycles.len()
    ))
}

fn operand(
    edges: &Option<PathBuf>,
    graphon: &Option<GraphonConfig>,
    record: &mut RunRecord,
) -> Result<Option<GeneralizedGraphon>> {
    match (edges, graphon) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "give an edge list or a graphon config, not both".into(),
        )),
        (Some(path), None) => {
            let (list, bytes) = read_edge_list(path)?;
            record.inputs.push(input_record(path, &bytes, &list.graph));
            Ok(Some(canonical_graphon(&list.graph)?))
        }
        (None, Some(gc)) => Ok(Some(gc.to_graphon()?)),
        (None, None) => Ok(None),
    }
}

/// Exact cut norm. Blocks with identical rows are merged when there are too
/// many to enumerate, and a function of one sign attains its norm on the
/// full square. Witness indices refer to the merged blocks in that case.
fn exact_cut_norm(f: StepFunction, pos: f64, neg: f64) -> Result<CutNormEstimate> {
    if f.num_blocks() <= MAX_EXACT_BLOCKS {
        return Ok(cut_norm_exact(&f)?);
    }
    let coarse = f.coarsen();
    if coarse.num_blocks() <= MAX_EXACT_BLOCKS {
        return Ok(cut_norm_exact(&coarse)?);
    }
    if pos == 0.0 || neg == 0.0 {
        let all: Vec<usize> = (0..coarse.num_blocks()).collect();
        return Ok(CutNormEstimate {
            value: pos.max(neg),
            witness_u: all.clone(),
            witness_v: all,
            exact: true,
        });
    }
    Err(CliError::Config(format!(
        "exact cut norm of a signed function with {} distinct blocks exceeds the limit of {MAX_EXACT_BLOCKS}; use --mode approx",
        coarse.num_blocks()
    )))
}

fn cutnorm(
    base: Map<String, Value>,
    seed: Option<Value>,
    a: &CutnormArgs,
    out: &mut OutputDir,
) -> Result<String> {
    let against_graphon = match &a.against_config {
        Some(p) => Some(val(GraphonConfig::from_json(
            &std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?,
        )?)),
        None => None,
    };
    let cfg: CutnormConfig = resolve(
        base,
        vec![
            ("edges", flag(&a.edges)),
            ("against_edges", flag(&a.against_edges)),
            ("against_graphon", against_graphon),
            ("mode", flag(&a.mode)),
            ("restarts", flag(&a.restarts)),
            ("align_restarts", flag(&a.align_restarts)),
            ("cells", flag(&a.cells)),
            ("seed", seed),
        ],
        vec![
            ("edges", Value::Null),
            ("graphon", Value::Null),
            ("against_edges", Value::Null),
            ("against_graphon", Value::Null),
            ("mode", val("exact")),
            ("restarts", val(DEFAULT_CUT_RESTARTS)),
            ("align_restarts", val(DEFAULT_ALIGN_RESTARTS)),
            ("cells", val(64)),
            ("seed", val(0)),
        ],
    )?;
    let mut record = RunRecord::new("cutnorm", &cfg)?;
    let first = operand(&cfg.edges, &cfg.graphon, &mut record)?
        .ok_or_else(|| CliError::Config("cutnorm needs --edges or a graphon config".into()))?;
    let report = match cfg.mode.as_str() {
        "exact" | "approx" => {
            if cfg.against_edges.is_some() || cfg.against_graphon.is_some() {
                return Err(CliError::Config(format!(
                    "mode {:?} takes one operand; use a distance mode to compare two",
                    cfg.mode
                )));
            }
            let f = StepFunction::from_graphon(&first.discretize(cfg.cells)?)?;
            let (pos, neg) = f.signed_mass();
            let est = if cfg.mode == "exact" {
                exact_cut_norm(f.clone(), pos, neg)?
            } else {
                cut_norm_approx(&f, cfg.restarts, cfg.seed)
            };
            json!({
                "mode": cfg.mode,
                "value": est.value,
                "upper": if est.exact { est.value } else { pos.max(neg) },
                "exact": est.exact,
                "witness": { "u": est.witness_u, "v": est.witness_v },
                "blocks": f.num_blocks(),
            })
        }
        mode => {
            let strategy: AlignStrategy = mode.parse().map_err(|_| {
                CliError::Config(format!(
                    "unknown mode {mode:?}; expected exact, approx, identity, degree-sorted or local-search"
                ))
            })?;
            let second = operand(&cfg.against_edges, &cfg.against_graphon, &mut record)?
                .unwrap_or_else(unit_square_indicator);
            let mut opts = DistanceOptions::new(strategy, cfg.seed);
            opts.cut_restarts = cfg.restarts;
            opts.align_restarts = cfg.align_restarts;
            let first = first.discretize(cfg.cells)?;
            let second = second.discretize(cfg.cells)?;
            let d = stretched_cut_distance_upper(&first, &second, &opts)?;
            json!({
                "mode": mode,
                "strategy": d.strategy.id(),
                "value": d.value,
                "lower": d.lower,
                "exact": d.exact,
                "witness": {
                    "u": d.witness_u,
                    "v": d.witness_v,
                    "order_first": d.order_first,
                    "order_second": d.order_second,
                },
                "refinement_size": d.refinement_size,
                "coupling_cells": d.coupling.entries.len(),
            })
        }
    };
    let value = report["value"].as_f64().unwrap_or(f64::NAN);
    out.write_json("cutnorm.json", &report)?;
    finish(out, record)?;
    Ok(format!("{} = {value}", cfg.mode))
}

fn experiment(
    base: Map<String, Value>,
    seed: Option<Value>,
    a: &ExperimentArgs,
    out: &mut OutputDir,
) -> Result<String> {
    let cfg: ExperimentRunConfig = resolve(
        base,
        vec![
            ("edges", flag(&a.edges)),
            ("batch", flag(&a.batch)),
            ("steps", flag(&a.steps)),
            ("reps", flag(&a.reps)),
            ("k", flag(&a.k)),
            ("seed", seed),
        ],
        vec![
            ("batch", val(200)),
            ("steps", val(90)),
            ("reps", val(20)),
            ("k", val(5)),
            ("seed", val(0)),
        ],
    )?;
    if cfg.reps == 0 || cfg.k == 0 {
        return Err(CliError::Config("reps and k must be positive".into()));
    }
    let (list, bytes) = read_edge_list(&cfg.edges)?;
    let g = &list.graph;
    let needed = cfg.batch.saturating_mul(cfg.steps);
    if needed > g.num_vertices() {
        return Err(CliError::input(
            &cfg.edges,
            format!(
                "batch × steps = {needed} exceeds the {} vertices of the graph",
                g.num_vertices()
            ),
        ));
    }
    let core_cfg = ExperimentConfig {
        batch: cfg.batch,
        steps: cfg.steps,
        repetitions: cfg.reps,
        k: cfg.k,
        seed: cfg.seed,
    };
    let (table, mut reps) = pipeline::mse_table(g, &core_cfg)?;
    out.write("table.csv", &table_csv(&table)?)?;
    out.write("fits.csv", &fits_csv(&table)?)?;
    out.write("snapshots.csv", &snapshots_csv(&reps)?)?;
    for rep in &mut reps {
        for s in &mut rep.spectra {
            s.tag = format!("rep{}/{}", rep.index, s.tag);
        }
    }
    let spectra: Vec<_> = reps
        .iter()
        .flat_map(|r| r.spectra.iter().cloned())
        .collect();
    out.write("spectra.csv", &spectra_csv(&spectra)?)?;
    let mut record = RunRecord::new("experiment", &cfg)?;
    record.inputs.push(input_record(&cfg.edges, &bytes, g));
    finish(out, record)?;
    let wins = table.rows.iter().filter(|r| r.ratio() > 1.0).count();
    Ok(format!(
        "sqrt|E| fits better than |V| for {wins} of {} eigenvalue indices",
        table.rows.len()
    ))
}
