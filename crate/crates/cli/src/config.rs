//! Graphon configs and per-command run configs.
//!
//! A run config is a JSON object whose keys mirror the command-line flags.
//! Flags override keys from the `--config` file, and defaults fill what
//! neither provides. The resolved object is what `run.json` records, so
//! passing a `run.json` back through `--config` replays the run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use graphon_core::graphon::{
    AnalyticFamily, AnalyticKernel, GeneralizedGraphon, Kernel, MeasureSpace, StepKernel,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphonConfig {
    pub space: SpaceConfig,
    pub kernel: KernelConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub length: Length,
    pub scale: f64,
}

/// A finite length or the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Length {
    Finite(f64),
    Named(String),
}

impl Length {
    fn value(&self) -> Result<f64> {
        match self {
            Self::Finite(x) => Ok(*x),
            Self::Named(s) if s == "inf" => Ok(f64::INFINITY),
            Self::Named(s) => Err(CliError::Config(format!(
                "space.length must be a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum KernelConfig {
    Step {
        boundaries: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
    Analytic {
        family: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
        truncation: f64,
    },
}

impl GraphonConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("graphon config: {e}")))
    }

    pub fn to_graphon(&self) -> Result<GeneralizedGraphon> {
        let space = MeasureSpace::new(self.space.length.value()?, self.space.scale)
            .map_err(|e| CliError::Config(format!("space: {e}")))?;
        let kernel = match &self.kernel {
            KernelConfig::Step { boundaries, values } => {
                let m = values.len();
                if let Some((i, row)) = values.iter().enumerate().find(|(_, r)| r.len() != m) {
                    return Err(CliError::Config(format!(
                        "kernel.values must be square: row {i} has {} entries, expected {m}",
                        row.len()
                    )));
                }
                let flat = values.iter().flatten().copied().collect();
                Kernel::Step(
                    StepKernel::new(boundaries.clone(), flat)
                        .map_err(|e| CliError::Config(format!("kernel: {e}")))?,
                )
            }
            KernelConfig::Analytic {
                family,
                params,
                truncation,
            } => {
                let mut p = params.clone();
                let mut take = |name: &str| {
                    p.remove(name).ok_or_else(|| {
                        CliError::Config(format!("family {family:?} needs params.{name}"))
                    })
                };
                let fam = match family.as_str() {
                    "constant" => AnalyticFamily::Constant { p: take("p")? },
                    "exp_decay" => AnalyticFamily::ExpDecay {
                        amplitude: take("amplitude")?,
                        rate: take("rate")?,
                    },
                    "min" => AnalyticFamily::Min,
                    other => {
                        return Err(CliError::Config(format!(
                            "unknown analytic family {other:?}; expected constant, exp_decay or min"
                        )))
                    }
                };
                let dilation = p.remove("dilation").unwrap_or(1.0);
                if let Some(extra) = p.keys().next() {
                    return Err(CliError::Config(format!(
                        "family {family:?} has no parameter {extra:?}"
                    )));
                }
                Kernel::Analytic(AnalyticKernel::new(fam, *truncation).with_dilation(dilation))
            }
        };
        GeneralizedGraphon::new(space, kernel)
            .map_err(|e| CliError::Config(format!("graphon: {e}")))
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })
}

/// The run-config object inside a `--config` document.
///
/// Accepts a run config, a bare graphon config (wrapped as `graphon`) or a
/// `run.json` record of the same command.
pub fn config_object(doc: Value, command: &str, path: &Path) -> Result<Map<String, Value>> {
    let Value::Object(mut map) = doc else {
        return Err(CliError::Config(format!(
            "{}: expected a JSON object",
            path.display()
        )));
    };
    if map.contains_key("kernel") {
        let mut wrapped = Map::new();
        wrapped.insert("graphon".into(), Value::Object(map));
        return Ok(wrapped);
    }
    if let (Some(Value::String(cmd)), Some(_)) = (map.get("command"), map.get("config")) {
        if cmd != command {
            return Err(CliError::Config(format!(
                "{} records a {cmd:?} run, not {command:?}",
                path.display()
            )));
        }
        return match map.remove("config") {
            Some(Value::Object(inner)) => Ok(inner),
            _ => Err(CliError::Config(format!(
                "{}: config must be an object",
                path.display()
            ))),
        };
    }
    Ok(map)
}

/// Overlay `flags` on `base`, fill `defaults`, and deserialize.
pub fn resolve<T: DeserializeOwned>(
    mut base: Map<String, Value>,
    flags: Vec<(&str, Option<Value>)>,
    defaults: Vec<(&str, Value)>,
) -> Result<T> {
    for (key, value) in flags {
        if let Some(v) = value {
            base.insert(key.to_string(), v);
        }
    }
    for (key, value) in defaults {
        base.entry(key.to_string()).or_insert(value);
    }
    serde_json::from_value(Value::Object(base)).map_err(|e| CliError::Config(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateConfig {
    pub graphon: GraphonConfig,
    pub time: f64,
    pub seed: u64,
    /// Use the block sampler (step kernels only).
    pub blocked: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    pub edges: PathBuf,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeConfig {
    pub graphon: GraphonConfig,
    pub times: Vec<f64>,
    pub k: usize,
    pub cycles: Vec<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomcheckConfig {
    pub edges: Option<PathBuf>,
    pub graphon: Option<GraphonConfig>,
    pub time: Option<f64>,
    pub cycles: Vec<usize>,
    pub seed: u64,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutnormConfig {
    pub edges: Option<PathBuf>,
    pub graphon: Option<GraphonConfig>,
    pub against_edges: Option<PathBuf>,
    pub against_graphon: Option<GraphonConfig>,
    pub mode: String,
    pub restarts: usize,
    pub align_restarts: usize,
    /// Grid for discretizing analytic kernels.
    pub cells: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentRunConfig {
    pub edges: PathBuf,
    pub batch: usize,
    pub steps: usize,
    pub reps: usize,
    pub k: usize,
    pub seed: u64,
}
