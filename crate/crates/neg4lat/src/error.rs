use num::BigRational;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: class over k={0} paired with class over k={1}")]
    DimensionMismatch(usize, usize),

    #[error("index error: {0}")]
    Index(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("symplectic area must be positive, got {0}")]
    NonPositiveArea(BigRational),

    #[error("gluing error: {0}")]
    Gluing(String),

    #[error("infeasible scenario: {0}")]
    Infeasible(String),

    #[error("inconsistent scenario: {0}")]
    Inconsistent(String),

    #[error("state is not marked minimal; apply minimal-model reduction first")]
    NotMinimal,

    #[error("Kodaira dimension is unassigned for K·ω = 0 with K² > 0")]
    UnassignedKodaira,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
