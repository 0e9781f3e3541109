use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A register, enumeration or simulation does not fit the configured limit.
    #[error("capacity exceeded: {what} needs {required}, limit is {available}{detail}")]
    CapacityExceeded {
        what: &'static str,
        required: usize,
        available: usize,
        /// Extra context such as a qubit breakdown. Empty or starting with "; ".
        detail: String,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for [`Error::CapacityExceeded`]; the CLI maps it to exit code 2.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::CapacityExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
