use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A model or solver parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An operation was called on input that breaks its precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("oracle refused: {uncoloured} uncoloured vertices with {k} colours exceeds {limit} completions")]
    OracleTooLarge {
        uncoloured: usize,
        k: u32,
        limit: u64,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_)
            | Error::Contract(_)
            | Error::VertexOutOfRange { .. }
            | Error::Parse { .. } => 1,
            Error::Io { .. } | Error::Csv { .. } => 2,
            Error::OracleTooLarge { .. } => 3,
        }
    }
}
