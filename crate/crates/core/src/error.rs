use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular or rank deficient: {0}")]
    Rank(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the origin is not an interior point of the body")]
    OriginNotInterior,
    #[error("body is not full-dimensional")]
    Degenerate,
    #[error("lattice is not a sublattice of the integer lattice")]
    NotIntegral,
    #[error("computation exceeded its budget: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
