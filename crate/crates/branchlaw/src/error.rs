use thiserror::Error;

/// Every failure the pipeline can produce. Each variant maps to a distinct
/// process exit code via `Error::exit_code`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("group construction error: {0}")]
    Group(String),

    #[error("character table error: {0}")]
    Table(String),

    #[error("integrality violation: {0}")]
    Integrality(String),

    #[error("rationality violation: {0}")]
    Rationality(String),

    #[error("denominator split failure: {0}")]
    Split(String),

    #[error("oracle disagreement: {0}")]
    Oracle(String),

    #[error("recurrence check failure: {0}")]
    KeyRelation(String),

    #[error("verification failure: {0}")]
    Verify(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable process exit code for this failure class. 0 and 1 are reserved
    /// for success and generic failure; 2 doubles as the usage-error code.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Parse(_) => 2,
            Error::Group(_) => 3,
            Error::Table(_) => 4,
            Error::Integrality(_) => 5,
            Error::Rationality(_) => 6,
            Error::Split(_) => 7,
            Error::Oracle(_) => 8,
            Error::KeyRelation(_) => 9,
            Error::Verify(_) => 10,
            Error::Internal(_) => 11,
            Error::Io(_) => 12,
            Error::Arithmetic(_) => 13,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
