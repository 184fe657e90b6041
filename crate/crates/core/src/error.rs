use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree s*m = {s}*{m} is outside 1..=20")]
    FieldDegree { s: u32, m: u32 },

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("element {0:#x} is not in the base subfield")]
    NotInSubfield(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
