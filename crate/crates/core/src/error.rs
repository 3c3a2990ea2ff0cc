use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid pivot {pivot}: {reason}")]
    InvalidPivot { pivot: String, reason: &'static str },

    #[error("cannot label split on variable x{}: {reason}", .variable + 1)]
    InvalidLabelSplit { variable: usize, reason: &'static str },

    #[error("slice is not a base case")]
    NotBaseCase,

    #[error("{0}")]
    Usage(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("exponent {0} does not fit the engine's exponent type; enable compression")]
    ExponentOverflow(String),

    #[error("brute-force search region has {points} points, above the limit of {limit}")]
    OracleBoxTooLarge { points: u128, limit: u64 },

    #[error("brute-force search region does not cover lcm(min I)")]
    OracleBoxTooSmall,

    #[error("could not reach {wanted} generators after {attempts} attempts (got {got})")]
    GeneratorsUnreachable { wanted: usize, got: usize, attempts: u64 },

    #[error("the codimension of the unit ideal is undefined")]
    UnitIdeal,
}

pub type Result<T> = std::result::Result<T, Error>;
