use alloc::string::String;
use core::fmt;

use crate::geometry::Rat;

/// Errors reported by the solver kit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An interval with `start >= end` was supplied.
    EmptyInterval,
    /// A cost function definition failed validation.
    InvalidCostFunction(String),
    /// A `table` cost function was evaluated at a length it does not list.
    UndefinedLength(Rat),
    /// An exponential-time routine was asked for more intervals than its cap.
    CapExceeded {
        what: &'static str,
        cap: usize,
        n: usize,
    },
    /// The supplied permutation is not a bijection on the instance's indices.
    InvalidOrdering,
    /// A routine that requires pairwise touching or intersecting intervals
    /// was given an instance where some covered area has several components.
    NotPairwiseConnected,
    /// The supplied exposed-part set admits no feasible decomposition of the
    /// covered area; a restricted enumerator was used outside its contract.
    InfeasibleEnumeration,
    /// The decision variant was requested but the instance carries no
    /// threshold `W`.
    MissingThreshold,
    /// A generator was called with parameters outside its domain.
    InvalidGeneratorParams(String),
    /// An enumerator parameter was out of range (for example `alpha = 0`).
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInterval => write!(f, "interval must satisfy start < end"),
            Error::InvalidCostFunction(msg) => write!(f, "invalid cost function: {msg}"),
            Error::UndefinedLength(x) => {
                write!(f, "table cost function is undefined at length {x}")
            }
            Error::CapExceeded { what, cap, n } => {
                write!(f, "{what} is capped at {cap} intervals, got {n}")
            }
            Error::InvalidOrdering => write!(f, "ordering is not a valid permutation"),
            Error::NotPairwiseConnected => write!(
                f,
                "instance has a covered area with several components; \
                 pairwise enumeration requires touching or intersecting intervals"
            ),
            Error::InfeasibleEnumeration => write!(
                f,
                "exposed-part set admits no feasible decomposition of the covered area"
            ),
            Error::MissingThreshold => write!(f, "instance has no threshold W"),
            Error::InvalidGeneratorParams(msg) => write!(f, "invalid generator parameters: {msg}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}
