use thiserror::Error;

/// Errors raised by the arithmetic kernels, constructions and searches.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element is not invertible: {0}")]
    NonInvertible(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("epsilon is not admissible: a^-1 N(eps) = {0} is not a square")]
    Inadmissible(String),

    #[error("resource limit reached at p = {prime}: {detail}")]
    ResourceLimit { prime: u64, detail: String },

    #[error("point has y*z = 0; boundary points are handled by the search")]
    BoundaryPoint,

    #[error("square class of g(t) is {0}, not +-1")]
    DecompositionObstruction(String),

    #[error("odd valuation of g(t) at p = {prime} on a local point: {detail}")]
    TheoremViolation { prime: u64, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
