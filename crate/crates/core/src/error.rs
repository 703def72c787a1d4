use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(s: impl Into<String>) -> Self {
        Error::Parse(s.into())
    }

    pub fn precondition(s: impl Into<String>) -> Self {
        Error::Precondition(s.into())
    }

    pub fn domain(s: impl Into<String>) -> Self {
        Error::Domain(s.into())
    }

    pub fn resource(s: impl Into<String>) -> Self {
        Error::Resource(s.into())
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Precondition(_) | Error::Domain(_) | Error::Arithmetic(_) => 3,
            Error::Resource(_) => 4,
        }
    }
}
