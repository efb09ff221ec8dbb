use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller violated a precondition (mismatched sizes, overlapping sets, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// Input too large for the requested exhaustive computation.
    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity { what: &'static str, got: usize, limit: usize },
    #[error("construction error: {0}")]
    Construction(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("interpolation error: {0}")]
    Interpolation(String),
    /// A denominator or prefactor vanished at the requested point.
    #[error("degenerate point: {0}")]
    Degenerate(String),
    /// The point lies outside the domain a pipeline is valid on.
    #[error("inadmissible point: {0}")]
    Inadmissible(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// An exact identity that must hold by construction did not.
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("oracle refused a graph with {n} vertices (cap {cap})")]
    OracleRefused { n: usize, cap: usize },
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
