use std::path::{Path, PathBuf};

use serde_json::json;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A malformed line in an input file.
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// An input that parses but cannot be used.
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] graphon_core::Error),

    /// A self-check found two computations that should agree but do not.
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    pub fn input(path: impl AsRef<Path>, message: impl Into<String>) -> Self {
        Self::Input {
            path: path.as_ref().to_path_buf(),
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Parse { .. } => "parse",
            Self::Input { .. } => "input",
            Self::Config(_) => "config",
            Self::Io { .. } => "io",
            Self::Core(graphon_core::Error::Config(_)) => "config",
            Self::Core(_) => "computation",
            Self::Check(_) => "check",
        }
    }

    /// 2 for anything the user can fix in their inputs, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "parse" | "input" | "config" => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut body = json!({
            "kind": self.kind(),
            "message": self.to_string(),
        });
        match self {
            Self::Parse { path, line, .. } => {
                body["path"] = json!(path.display().to_string());
                body["line"] = json!(line);
            }
            Self::Input { path, .. } | Self::Io { path, .. } => {
                body["path"] = json!(path.display().to_string());
            }
            _ => {}
        }
        json!({ "error": body })
    }
}
