use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: need lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("knot {0} is not in the window")]
    KnotNotFound(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("function list is linearly dependent (residual {residual:.3e} at index {index})")]
    DependentSet { index: usize, residual: f64 },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("spaces are not nested: {0}")]
    NotNested(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
