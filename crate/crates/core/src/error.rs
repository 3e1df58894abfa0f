use thiserror::Error;

/// Errors raised by the library.
///
/// Mismatches found by verification scans are reported as data, not as
/// errors. `Internal` is reserved for broken invariants (a formula that
/// produced a fractional or negative dimension, an oracle recursion going
/// negative); it signals a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported weight k = {0} (weights must be integers >= 2)")]
    UnsupportedWeight(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("sequencing error: {0}")]
    Sequencing(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
