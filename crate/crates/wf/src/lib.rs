//! Config-driven command line over `wreathgen-core`: build towers, emit and
//! verify generator sets, and run the rebracketing and lower-bound checks.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use std::io;

pub use commands::Context;
pub use config::ConfigError;
pub use report::Report;

/// Errors that stop a command before a report exists (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}
