use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error(
        "polynomial is not homogeneous of degree {expected} with variable degrees <= {max_part}"
    )]
    WrongDegree { expected: usize, max_part: usize },

    #[error("structural failure: {0}")]
    StructuralFailure(String),

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("positive entropy or non-unipotent action: {0}")]
    NotQuasiUnipotent(String),

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
