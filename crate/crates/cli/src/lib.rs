//! Verification harness behind the `minorkit` binary: corpus loading,
//! seeded instance generation, property suites and JSON reports.

pub mod corpus;
pub mod find;
pub mod generate;
pub mod report;
pub mod suites;

use thiserror::Error;

/// Report and manifest schema version.
pub const SCHEMA: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const EXHAUSTED: i32 = 2;
    pub const ABSENT: i32 = 3;
    pub const USAGE: i32 = 64;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: String,
        #[source]
        source: minorkit::Error,
    },
    #[error(transparent)]
    Core(#[from] minorkit::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Bad arguments or unreadable input are usage errors; anything raised
    /// while running a search is a failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Input { .. } => exit::USAGE,
            CliError::Core(_) | CliError::Json(_) => exit::FAILURE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
