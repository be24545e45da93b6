use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant maps to a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclic order must be at least 1, got {0}")]
    InvalidOrder(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parent mismatch: expected group {expected:?}, found {found:?}")]
    ParentMismatch { expected: Vec<i64>, found: Vec<i64> },

    #[error("exponent tuple has length {found}, group has rank {expected}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("{0} is not a subgroup of the ambient subgroup")]
    NotSubgroup(&'static str),

    #[error("structural error in {field}: {message}")]
    Structural { field: String, message: String },

    #[error("operation requires a datum satisfying {0}")]
    Precondition(&'static str),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("oracle scale exceeded: {size} elements > cap {cap}")]
    OracleScale { size: u128, cap: u128 },

    #[error("search space estimate {estimate} exceeds cap {cap}")]
    SearchCap { estimate: u128, cap: u128 },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("unknown example {0:?}")]
    UnknownExample(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) => "invalid_order",
            Error::Overflow(_) => "arithmetic_overflow",
            Error::ParentMismatch { .. } => "parent_mismatch",
            Error::WidthMismatch { .. } => "width_mismatch",
            Error::NotSubgroup(_) => "not_subgroup",
            Error::Structural { .. } => "structural_error",
            Error::Precondition(_) => "precondition_failed",
            Error::Consistency(_) => "internal_consistency",
            Error::TheoremViolation(_) => "theorem_violation",
            Error::OracleScale { .. } => "oracle_scale",
            Error::SearchCap { .. } => "search_cap_exceeded",
            Error::Schema(_) => "schema_error",
            Error::Parse(_) => "parse_error",
            Error::UnknownExample(_) => "unknown_example",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Io(_) => "io_error",
        }
    }

    pub(crate) fn structural(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Structural {
            field: field.into(),
            message: message.into(),
        }
    }
}
