use thiserror::Error;

use crate::formats::FormatError;
use crate::model::{ProblemKind, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error)]
pub enum Error {
    /// A checked 64-bit operation overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// The input is well-formed but too large for the configured limits.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    #[error("expected a {expected} object, found {found}")]
    KindMismatch {
        expected: ProblemKind,
        found: ProblemKind,
    },

    #[error("solution has length {actual}, instance needs {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("solution is infeasible for the reduction target: {0}")]
    TargetInfeasible(ValidationReport),

    /// An internal consistency check failed; always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Format(#[from] FormatError),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_) | Error::Overflow(_))
    }
}
