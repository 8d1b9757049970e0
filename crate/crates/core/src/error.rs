use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{what} exceeds the size cap ({got} > {limit})")]
    SizeCap {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("diagnostic failure: {0}")]
    Diagnostic(String),

    #[error("ill-conditioned computation: {0}")]
    IllConditioned(String),

    #[error("root separation collapsed to {separation:e} near lambda = {lambda}")]
    SeparationCollapse { lambda: String, separation: f64 },

    #[error("path refinement exceeded {limit} samples")]
    RefinementLimit { limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameters(msg.into()))
}
