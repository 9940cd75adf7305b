use thiserror::Error;

/// Errors surfaced by the library, grouped by the pipeline stage they come from.
#[derive(Debug, Error)]
pub enum Error {
    /// Input bytes could not be turned into package records.
    #[error("parse error: {0}")]
    Parse(String),

    /// Graph construction or connectivity requirement violated.
    #[error("graph error: {0}")]
    Graph(String),

    /// Power-law fit could not be computed on the given distribution.
    #[error("fit error: {0}")]
    Fit(String),

    /// Remote registry could not be reached and no usable cache exists.
    #[error("network error: {0}")]
    Network(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 parse, 3 graph/connectivity, 4 fit, 5 I/O or network.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Graph(_) => 3,
            Error::Fit(_) => 4,
            Error::Network(_) | Error::Io(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
