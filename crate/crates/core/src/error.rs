use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size cap exceeded: {what} would need {requested} (cap {cap})")]
    SizeCap {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not projectively homogeneous: the all-ones vector is not in the row span")]
    NotHomogeneous,

    #[error("matrix is not normalized: {0}")]
    NotNormalized(String),

    #[error("torus point has a zero coordinate at index {0}")]
    ZeroCoordinate(usize),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("formula not guaranteed by the classification: {0}")]
    FormulaNotGuaranteed(String),

    #[error("degeneration check failed: {0}")]
    Degeneration(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }
}
