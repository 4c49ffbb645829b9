use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("word is empty or all zeros; no positive value")]
    EmptyWord,
    #[error("invalid digit {0}; expected 0, 1 or 2")]
    InvalidDigit(u8),
    #[error("n must be positive")]
    ZeroNotAllowed,
    #[error("n = {0} is odd; an even integer is required")]
    OddNotAllowed(u64),
    #[error("n = {0} is a power of two")]
    PowerOfTwo(u64),
    #[error("n = {0} is too small for this decomposition")]
    TooSmall(u64),
    #[error("n = {0} exceeds the oracle bound {1}")]
    OracleBound(u64, u64),
    #[error("unknown proposition id: {0}")]
    UnknownProposition(String),
    #[error("expansion {word} of {n} has length outside {{⌊log₂ n⌋, ⌊log₂ n⌋+1}}")]
    LengthInvariant { word: String, n: u64 },
    #[error("structural invariant violated: {0}")]
    StructureMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
