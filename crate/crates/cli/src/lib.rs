//! The `bvosc` command line: ingest a signal from CSV or a JSON descriptor,
//! run the multiscale analysis, the segment classifier, or one of the
//! verification suites, and emit machine-readable reports.

// `!(x > 0.0)` rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod descriptor;
pub mod ingest;
pub mod verify;

use std::fmt;

/// Process exit codes. Clap's own usage errors already exit with 2, which
/// lines up with the input-error convention here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    VerificationFailed = 1,
    InputError = 2,
    DomainError = 3,
}

/// Errors carrying their exit classification.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input: unreadable files, bad CSV/JSON, invalid flags.
    Input(String),
    /// Structurally valid input that the analysis rejects (window outside
    /// the domain, degenerate interval, non-monotone probe window, ...).
    Domain(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::InputError,
            CliError::Domain(_) => ExitCode::DomainError,
        }
    }

    pub fn input(err: impl fmt::Display) -> Self {
        CliError::Input(err.to_string())
    }

    pub fn domain(err: impl fmt::Display) -> Self {
        CliError::Domain(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Output format of every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
