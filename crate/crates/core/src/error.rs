use thiserror::Error;

/// Errors raised at the public boundary of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree {degree} is out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },

    #[error("cannot contract a {vector}-vector into a {form}-form")]
    ContractionDegree { vector: usize, form: usize },

    #[error("contraction degree m = {m} must lie in 1..={max}")]
    ContractionRange { m: usize, max: usize },

    #[error("form of degree {degree} is not closed")]
    NotClosed { degree: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
