use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("instance too large for exhaustive enumeration: n = {n} > {max}")]
    TooLarge { n: usize, max: usize },

    #[error("empty archive")]
    EmptyArchive,

    #[error("empty sample")]
    EmptySample,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
