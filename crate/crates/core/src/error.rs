use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("indeterminate phase: cosine and sine estimates both vanish")]
    IndeterminatePhase,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
