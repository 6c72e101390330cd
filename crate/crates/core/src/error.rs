use thiserror::Error;

/// Errors raised by the numeric routines.
///
/// The variants map onto the three failure classes the runner distinguishes:
/// bad arguments (`Range`, `Contract`, `DimensionMismatch`), exhausted
/// computational budgets (`Resource`), and everything else.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index out of range: requested {requested}, available {available}")]
    Range { requested: usize, available: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
