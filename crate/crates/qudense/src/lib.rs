//! Command-line companion to `qudense-core`: file formats, configuration,
//! deterministic thread pools, and the report emitters behind the `qudense`
//! binary.

pub mod commands;
pub mod config;
pub mod io;
pub mod parallel;
pub mod report;

use std::process::ExitCode;

/// Error kinds mapped onto process exit codes: usage/input problems exit 2,
/// failed checks and assertions exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Check(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Check(m) => m,
        }
    }
}

impl From<qudense_core::Error> for CliError {
    fn from(e: qudense_core::Error) -> Self {
        match e {
            // a strict-mode palette violation is a data check, not a usage error
            qudense_core::Error::OffPalette { .. } => CliError::Check(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
