use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {what} ({count} > cap {cap})")]
    Capacity {
        what: &'static str,
        count: u128,
        cap: u128,
    },
    #[error("structure error: {0}")]
    Structure(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} has no outgoing edges")]
    Sink { vertex: usize },
    #[error("horizon {horizon} too short: need at least {required} turns")]
    Horizon { horizon: usize, required: usize },
    #[error(
        "graph is not out-regular: vertex {vertex} has out-degree {degree}, expected {expected}"
    )]
    Regularity {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("equality check failed: {0}")]
    Equality(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
