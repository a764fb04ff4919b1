//! Library side of the `etgrs` command: configuration parsing, the
//! commands themselves, and their table/JSON rendering. `main.rs` only
//! parses flags and forwards here.

pub mod commands;
pub mod config;
pub mod render;
pub mod reproduce;

use thiserror::Error;

pub use commands::{classify, matrix, search, MatrixWhich, SearchConfig};
pub use config::{ElementSet, ElementText, Format, RunConfig};
pub use render::Report;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Bad flags, bad parameters, or a budget error.
    pub const USAGE: i32 = 1;
    /// Criteria and exhaustive search disagree.
    pub const DISAGREEMENT: i32 = 2;
    /// A reproduction claim did not hold.
    pub const CLAIM_FAILED: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] etgrs_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Config {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
