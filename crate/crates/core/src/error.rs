use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Elements or derivations over different generator sets, d² ≠ 0, bad degrees.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("validation error at `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("parse error at `{field}`: {message}")]
    Parse { field: String, message: String },
    #[error("classification error: {0}")]
    Classification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }

    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { field: field.into(), message: message.into() }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 1,
            _ => 2,
        }
    }

    /// Prefix every field pointer with `prefix`, e.g. `differential.x`.
    pub fn within(self, prefix: &str) -> Self {
        match self {
            Error::Validation { field, message } => Error::Validation { field: join(prefix, &field), message },
            Error::Parse { field, message } => Error::Parse { field: join(prefix, &field), message },
            other => other,
        }
    }
}

fn join(prefix: &str, field: &str) -> String {
    if field.is_empty() {
        prefix.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
