//! Command-line driver: configuration, catalogue files and report
//! emission over the `gracelab` core.

use std::path::Path;

use gracelab::search::Status;

pub mod catalogue;
mod commands;
pub mod config;
mod input;

pub use catalogue::CatalogueEntry;
pub use commands::{run_command, Cli};
pub use config::{OutputFormat, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    /// Property holds or search found.
    Holds = 0,
    /// Refuted or exhausted.
    Refuted = 1,
    /// Usage or I/O error.
    Usage = 2,
    Budget = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] gracelab::error::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("catalogue line {line}: {reason}")]
    Schema { line: usize, reason: String },
    #[error("catalogue already records {key} / {property} as {stored:?}, refusing {new:?}")]
    Conflict {
        key: String,
        property: String,
        stored: Status,
        new: Status,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit(&self) -> Exit {
        match self {
            CliError::Core(gracelab::error::Error::BudgetExceeded) => Exit::Budget,
            _ => Exit::Usage,
        }
    }
}
