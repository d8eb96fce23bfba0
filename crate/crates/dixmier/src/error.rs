use thiserror::Error;

/// Crate-wide error type.
///
/// The variants map onto the exit-code contract of the command-line driver:
/// domain and precondition failures are caller errors, numerical and resource
/// failures are internal faults.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside an operation's domain (nonpositive measure, increasing
    /// sequence, division by zero, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition does not hold (e.g. a measurability verdict was
    /// requested for a normalizing function that fails the doubling limit).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Numerical breakdown: differencing instability, non-convergent sweeps.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A lazy generator was driven past its piece budget.
    #[error("resource exhausted: {0}")]
    Resource(String),

    /// An internal invariant was observed to fail on the given data.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
