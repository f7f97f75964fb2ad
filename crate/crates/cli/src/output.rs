//! Output files: CSV tables, JSON reports and `run.json` provenance.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so every
//! file re-parses to the exact values that produced it.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use graphon_core::experiments::{MseRow, MseTable, Repetition};
use graphon_core::homomorphism::DensityPoint;
use graphon_core::{SpectrumResult, VertexPoint};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Write `bytes` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Collects the files of one run under an output directory.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutputDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self {
            root: root.into(),
            written: Vec::new(),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.root.join(name);
        write_atomic(&path, bytes)?;
        self.written.push(name.to_string());
        Ok(path)
    }

    pub fn write_json(&mut self, name: &str, value: &impl Serialize) -> Result<PathBuf> {
        let mut text =
            serde_json::to_vec_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
        text.push(b'\n');
        self.write(name, &text)
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }
}

fn csv_bytes<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let wrap = |e: csv::Error| CliError::Config(format!("csv: {e}"));
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.serialize(row).map_err(wrap)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Config(format!("csv: {e}")))
}

pub const SPECTRA_HEADER: [&str; 6] = [
    "snapshot_tag",
    "num_vertices",
    "num_edges",
    "j",
    "lambda",
    "lambda_scaled",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SpectrumRow {
    snapshot_tag: String,
    num_vertices: usize,
    num_edges: usize,
    j: i64,
    lambda: f64,
    /// Empty when the snapshot has no edges.
    lambda_scaled: Option<f64>,
}

pub fn spectra_csv(spectra: &[SpectrumResult]) -> Result<Vec<u8>> {
    let rows = spectra.iter().flat_map(|s| {
        s.indices().map(move |j| SpectrumRow {
            snapshot_tag: s.tag.clone(),
            num_vertices: s.num_vertices,
            num_edges: s.num_edges,
            j,
            lambda: s.lambda(j).expect("index from indices()"),
            lambda_scaled: s.scaled(j),
        })
    });
    csv_bytes(&SPECTRA_HEADER, rows)
}

/// Inverse of [`spectra_csv`]. Rows of one snapshot must be contiguous.
pub fn parse_spectra_csv(bytes: &[u8], path: &Path) -> Result<Vec<SpectrumResult>> {
    let mut r = csv::Reader::from_reader(bytes);
    let headers = r.headers().map_err(|e| parse_err(path, &e))?.clone();
    if headers.iter().ne(SPECTRA_HEADER) {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("expected columns {}", SPECTRA_HEADER.join(",")),
        });
    }
    let mut out: Vec<SpectrumResult> = Vec::new();
    for rec in r.deserialize::<SpectrumRow>() {
        let row = rec.map_err(|e| parse_err(path, &e))?;
        let start_new = out.last().is_none_or(|s| s.tag != row.snapshot_tag);
        if start_new {
            out.push(SpectrumResult {
                tag: row.snapshot_tag.clone(),
                num_vertices: row.num_vertices,
                num_edges: row.num_edges,
                ..Default::default()
            });
        }
        let s = out.last_mut().expect("pushed above");
        let (tail, scaled) = if row.j > 0 {
            (&mut s.positive_tail, &mut s.scaled_positive)
        } else {
            (&mut s.negative_tail, &mut s.scaled_negative)
        };
        tail.push(row.lambda);
        if let Some(x) = row.lambda_scaled {
            scaled.push(x);
        }
    }
    Ok(out)
}

fn parse_err(path: &Path, e: &csv::Error) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        line: e.position().map_or(0, |p| p.line() as usize),
        message: e.to_string(),
    }
}

#[derive(Serialize)]
struct VertexRow {
    id: u64,
    birth_time: f64,
    feature: f64,
}

pub fn vertices_csv(ids: &[u64], points: &[VertexPoint]) -> Result<Vec<u8>> {
    let rows = ids.iter().zip(points).map(|(&id, p)| VertexRow {
        id,
        birth_time: p.birth_time,
        feature: p.feature,
    });
    csv_bytes(&["id", "birth_time", "feature"], rows)
}

#[derive(Serialize)]
struct DensityRow {
    t: f64,
    num_vertices: usize,
    num_edges: usize,
    k: usize,
    h_value: Option<f64>,
}

pub fn density_csv(points: &[DensityPoint]) -> Result<Vec<u8>> {
    let rows = points.iter().map(|p| DensityRow {
        t: p.t,
        num_vertices: p.num_vertices,
        num_edges: p.num_edges,
        k: p.k,
        h_value: p.h,
    });
    csv_bytes(&["t", "num_vertices", "num_edges", "k", "h_value"], rows)
}

#[derive(Serialize)]
struct FitRow {
    j: i64,
    predictor: &'static str,
    slope: f64,
    mse: f64,
    repetitions: usize,
}

/// Fits averaged over repetitions, one row per `(j, predictor)`.
pub fn fits_csv(table: &MseTable) -> Result<Vec<u8>> {
    let rows = table.rows.iter().flat_map(|r| {
        [
            FitRow {
                j: r.j,
                predictor: "sqrt_edges",
                slope: r.slope_sqrt_edges,
                mse: r.mse_sqrt_edges,
                repetitions: table.repetitions,
            },
            FitRow {
                j: r.j,
                predictor: "num_vertices",
                slope: r.slope_num_vertices,
                mse: r.mse_num_vertices,
                repetitions: table.repetitions,
            },
        ]
    });
    csv_bytes(&["j", "predictor", "slope", "mse", "repetitions"], rows)
}

/// MSE table with one column per eigenvalue index and one row per model,
/// plus the ratio `MSE(|V|) / MSE(sqrt|E|)`.
pub fn table_csv(table: &MseTable) -> Result<Vec<u8>> {
    let mut header = vec!["model".to_string(), "predictor".to_string()];
    header.extend(table.rows.iter().map(|r| format!("lambda_{}", r.j)));
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| CliError::Config(format!("csv: {e}"));
    w.write_record(&header).map_err(wrap)?;
    type Column = fn(&MseRow) -> f64;
    let lines: [(&str, &str, Column); 3] = [
        ("generalized_graphon_process", "sqrt_edges", |r| {
            r.mse_sqrt_edges
        }),
        ("standard_graphon", "num_vertices", |r| r.mse_num_vertices),
        ("ratio", "num_vertices/sqrt_edges", |r| r.ratio()),
    ];
    for (model, predictor, get) in lines {
        let mut rec = vec![model.to_string(), predictor.to_string()];
        rec.extend(table.rows.iter().map(|r| get(r).to_string()));
        w.write_record(&rec).map_err(wrap)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Config(format!("csv: {e}")))
}

#[derive(Serialize)]
struct SnapshotRow {
    repetition: usize,
    step: usize,
    drawn: usize,
    num_vertices: usize,
    num_edges: usize,
    /// Largest `|λ_j|` among the computed eigenvalues; empty for edgeless
    /// snapshots.
    max_abs_lambda: Option<f64>,
}

/// Per-snapshot counts with the largest computed eigenvalue magnitude.
pub fn snapshots_csv(reps: &[Repetition]) -> Result<Vec<u8>> {
    let rows = reps.iter().flat_map(|rep| {
        let by_tag: BTreeMap<&str, f64> = rep
            .spectra
            .iter()
            .map(|s| (s.tag.as_str(), s.max_abs()))
            .collect();
        rep.stats.iter().map(move |st| SnapshotRow {
            repetition: rep.index,
            step: st.step,
            drawn: st.drawn,
            num_vertices: st.num_vertices,
            num_edges: st.num_edges,
            max_abs_lambda: by_tag.get(format!("step{}", st.step).as_str()).copied(),
        })
    });
    csv_bytes(
        &[
            "repetition",
            "step",
            "drawn",
            "num_vertices",
            "num_edges",
            "max_abs_lambda",
        ],
        rows,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
    pub num_vertices: usize,
    pub num_edges: usize,
}

/// Provenance of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// The resolved run config; feeding this file back through `--config`
    /// repeats the run.
    pub config: serde_json::Value,
    /// SHA-256 of the compact JSON encoding of `config`.
    pub config_hash: String,
    pub inputs: Vec<InputRecord>,
    pub outputs: Vec<String>,
}

impl RunRecord {
    pub fn new(command: &str, config: &impl Serialize) -> Result<Self> {
        let config = serde_json::to_value(config).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Self {
            tool: "graphon".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config_hash: config_hash(&config),
            config,
            inputs: Vec::new(),
            outputs: Vec::new(),
        })
    }
}

pub fn config_hash(config: &serde_json::Value) -> String {
    sha256_hex(config.to_string().as_bytes())
}
