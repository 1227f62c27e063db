use fdc_core::{Error as CoreError, ValidationFailure};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed scenario {origin}: {source}")]
    Json { origin: String, source: serde_json::Error },
    #[error("unknown bundled scenario {0:?}")]
    UnknownBundled(String),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("unknown {kind} {name:?}")]
    Unregistered { kind: &'static str, name: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// Validation failures carried by this error, if any.
    pub fn failures(&self) -> Vec<ValidationFailure> {
        match self {
            CliError::Core(CoreError::Validation(v)) => v.clone(),
            _ => vec![],
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
