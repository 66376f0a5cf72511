use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("element order exceeded cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("torsion enumeration needs more than {budget} search nodes")]
    OracleBudgetExceeded { budget: u64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Parse(#[from] crate::word::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
