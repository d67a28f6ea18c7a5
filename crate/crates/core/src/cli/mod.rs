//! The `.bxm` text format and the `bxm` command driver.
//!
//! Exit codes: 0 pass, 1 validation or check failure, 2 parse or reference
//! error, 3 enumeration cap exceeded.

mod commands;
mod format;
mod workspace;

use thiserror::Error;

use crate::report::Report;

pub use commands::{
    cmd_check, cmd_construct, cmd_fmt, cmd_suite, cmd_validate, exit_code, Options, OutputFormat, Outcome,
};
pub use format::{load, parse_bxm, serialize};
pub use workspace::{NamedAction, NamedBraiding, NamedMap, NamedMorphism, NamedObject, Workspace};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: {message}")]
    Reference { line: usize, column: usize, message: String },
    #[error("{}", .report.first_failure().unwrap_or_else(|| .report.check.clone()))]
    Validation { report: Report },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Reference { .. } | CliError::Usage(_) | CliError::Io(_) => EXIT_PARSE,
            CliError::Validation { .. } => EXIT_FAIL,
            CliError::Resource(_) => EXIT_CAP,
        }
    }
}
