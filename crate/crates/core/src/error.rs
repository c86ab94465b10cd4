use thiserror::Error;

/// Errors raised by the codecs, machine loaders and experiment drivers.
///
/// Divergence of a simulated program is never an error: universal
/// interpreters report it as an outcome.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid word {word:?}: symbol {symbol:?} is not in the alphabet")]
    InvalidWord { word: String, symbol: char },
    #[error("shortlex index overflow for word of length {0}")]
    IndexOverflow(usize),
    #[error("malformed pair: {0}")]
    MalformedPair(String),
    #[error("invalid machine code: {0}")]
    InvalidCode(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("determinism violation: {0}")]
    Determinism(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid predicate: {0}")]
    InvalidPredicate(String),
    #[error("implication {premise} => {conclusion} fails on word {counterexample:?}")]
    ImplicationViolation {
        premise: String,
        conclusion: String,
        counterexample: String,
    },
    #[error("invalid function table: {0}")]
    InvalidTable(String),
    #[error("index {index} out of range for pool of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown problem {0:?}")]
    UnknownProblem(String),
    #[error("input does not fit the machine memory: {0}")]
    InputTooLong(String),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
