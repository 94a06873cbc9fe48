use thiserror::Error;

/// Every fallible operation in the crate returns this.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("index {index} out of range (len {len})")]
    Index { index: usize, len: usize },
    #[error("abelianization kernel has rank {0}, expected 1")]
    KernelRank(usize),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Oracle(_) | Error::Resource(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
