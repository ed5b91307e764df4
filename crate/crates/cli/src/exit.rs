//! Stable exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | invalid parameters (including flag errors) |
//! | 3 | I/O error or malformed graph file |
//! | 4 | an inquiry exceeded the exploration budget |
//! | 5 | `verify` found a mismatch or an infeasible assignment |
//! | 6 | an experiment verdict failed |

use std::fmt;
use std::process::ExitCode;

use lcalab_core::Error;

pub const PARAM: u8 = 2;
pub const IO: u8 = 3;
pub const BUDGET: u8 = 4;
pub const MISMATCH: u8 = 5;
pub const VERDICT: u8 = 6;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn param(message: impl Into<String>) -> Self {
        Self::new(PARAM, message)
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) | Error::Generation(_) => PARAM,
            Error::Parse { .. } | Error::Io(_) | Error::Json(_) => IO,
            Error::BudgetExceeded { .. } => BUDGET,
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(IO, e.to_string())
    }
}
