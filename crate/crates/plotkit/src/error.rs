use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlotError {
    #[error("{what}: expected length {expected}, got {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },
    #[error("column `{0}` not found in table")]
    MissingColumn(String),
    #[error("column `{0}` has the wrong type: expected {1}")]
    ColumnType(String, &'static str),
    #[error("figure {0} is closed")]
    Closed(u64),
}

pub type Result<T> = std::result::Result<T, PlotError>;
