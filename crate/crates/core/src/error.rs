use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator sets differ: {left} vs {right}")]
    GeneratorMismatch { left: String, right: String },

    #[error("truncations differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("form is not closed; d(form) = {residual}")]
    NotClosed { residual: String },

    #[error("element is not primitive (not in the free Lie algebra): {0}")]
    NotPrimitive(String),

    #[error("linear system has no solution: {0}")]
    NoSolution(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("consistency check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
