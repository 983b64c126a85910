use thiserror::Error;

/// Errors raised by the exact-arithmetic and algebroid APIs.
///
/// Identity violations found by validators are not errors; they are
/// reported as data in a [`crate::cartan::ValidationReport`].
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("commutator of basis elements {i} and {j} leaves the span")]
    NotClosed { i: usize, j: usize },

    #[error("basis is linearly dependent (rank {rank} < {count})")]
    DependentBasis { rank: usize, count: usize },

    #[error("isotropy group closure exceeded {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
