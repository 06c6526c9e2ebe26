use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quantum number `{0}`")]
    QuantumNumber(String),

    #[error("{0}")]
    Domain(String),

    #[error("invalid value for `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("no orbital matrix elements for (v={v}, L={l})")]
    DataMissing { v: u32, l: u32 },

    #[error("no mixing coefficients for mixed level {0}")]
    MissingMixing(String),

    #[error("mixing inversion has no real solution: {0}")]
    Inversion(String),

    #[error("transition {0} is forbidden in circular polarization")]
    Forbidden(String),

    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(origin: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            origin: origin.into(),
            message: message.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
