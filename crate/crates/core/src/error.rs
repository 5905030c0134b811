use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("rank n = {0} is not supported (need n >= 3)")]
    InvalidRank(i64),

    #[error("invalid basis element: {0}")]
    InvalidBasisElement(String),

    #[error("element {element} is not valid in a ring of rank {n}")]
    ContextMismatch { element: String, n: u32 },

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("part exceeds direction bound in monomial `{monomial}`")]
    PartExceedsDirection { monomial: String },

    #[error("index {index} out of range 1..={n} at position {pos}")]
    IndexOutOfRange { index: u64, n: u32, pos: usize },

    #[error("line {line}: {message}")]
    BFileParse { line: usize, message: String },

    #[error("line {line}: duplicate index {index}")]
    BFileDuplicate { line: usize, index: u64 },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
