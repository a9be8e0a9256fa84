use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A requested computation exceeds the configured capacity limits.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An operation precondition does not hold for the given arguments.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The arguments lie outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bad spec name, parameters or run configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numeric routine failed to reach its tolerance.
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 1 for usage/config problems,
    /// 2 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numeric(_) => 2,
            _ => 1,
        }
    }
}
