use thiserror::Error;

/// Errors raised by parsing, validation and the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CogError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("{0} is not an e-edge")]
    NotAnEEdge(usize),
    #[error("cog is not {degree}-regular")]
    NotRegular { degree: usize },
    #[error("edge sets D and X are not disjoint")]
    NotDisjoint,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("cog is not connected")]
    Disconnected,
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero: A = 0 in a term with negative exponent")]
    ZeroDivision,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, CogError>;
