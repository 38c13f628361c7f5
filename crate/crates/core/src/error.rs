use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("no image given for variable `{0}`")]
    MissingImage(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("monomial ideal is not square-free: `{0}`")]
    NotSquarefree(String),

    #[error("polynomial is not in the prime: `{0}`")]
    NotInPrime(String),

    #[error("t = {0:?} is not a minimal prime of the wedge scheme")]
    NotMinimalPrime(Vec<u32>),

    #[error("{0}")]
    Unsupported(String),

    #[error("problem exceeds the desk-scale bound: {0}")]
    ScaleExceeded(String),

    #[error("Groebner budget of {0} S-pairs exhausted")]
    Budget(usize),
}
