//! Library half of the `gadsim` command-line tool.
//!
//! The binary in `main.rs` is a thin wrapper; argument definitions,
//! configuration resolution, serialization and the command implementations
//! all live here so they can be unit-tested directly.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

/// Command failures mapped onto the stable exit-code contract:
/// 0 success, 1 verification failure, 2 usage/config error, 3 I/O error.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}
