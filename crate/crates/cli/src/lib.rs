//! Command-line front end for the knotwave library: builds bases and
//! wavelets, writes samples, manifests and coefficient tables, and runs the
//! verification suite.

pub mod commands;
pub mod config;
pub mod output;
pub mod suite;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("construction failed: {0}")]
    Construction(#[from] knotwave::Error),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Construction(knotwave::Error::Usage(_)) => 2,
            CliError::Construction(_) | CliError::Io { .. } | CliError::Json(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
