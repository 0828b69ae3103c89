//! IO companion to `iord-core`: the instance JSON format, SVG rendering of
//! orderings, and the verification harness behind `iord verify`.

pub mod json;
pub mod svg;
pub mod verify;

use std::fmt;

/// CLI-facing error with a fixed exit-code contract:
/// 0 ok, 1 verification failure, 2 input error, 3 cap exceeded,
/// 4 infeasible enumeration.
#[derive(Debug)]
pub enum CliError {
    /// Unparseable or invalid input (exit 2).
    Input(String),
    /// A solver/enumerator cap was exceeded (exit 3).
    Cap(String),
    /// The chosen enumerator cannot decompose the instance (exit 4).
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Infeasible(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<iord_core::Error> for CliError {
    fn from(e: iord_core::Error) -> Self {
        match e {
            iord_core::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            iord_core::Error::InfeasibleEnumeration | iord_core::Error::NotPairwiseConnected => {
                CliError::Infeasible(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Formats a rational as `p/q`, omitting the denominator when it is 1.
pub fn format_rat(r: &iord_core::Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
