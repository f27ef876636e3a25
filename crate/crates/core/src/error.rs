use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structurally invalid input; `field` names the offending location.
    #[error("malformed input at `{field}`: {reason}")]
    Malformed { field: String, reason: String },

    /// A polynomial or window with no content (e.g. all-zero coefficients).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The instance lies outside the function class an operation is defined on.
    #[error("class violation: {0}")]
    ClassViolation(String),
}

impl Error {
    pub fn malformed(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Malformed {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
