use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF(4)")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("code has no nonzero codeword")]
    NoNonzeroCodeword,
    #[error("distance {d} exceeds the Singleton bound {bound} for n = {n}")]
    BoundViolation { n: usize, d: usize, bound: usize },
    #[error("length out of range: {0}")]
    Length(String),
    #[error("entry outside the allowed alphabet: {0}")]
    Alphabet(String),
    #[error("could not find {m} coefficient vectors with every {n} independent")]
    InfeasibleShareCount { n: usize, m: usize },
    #[error("recovered matrix has non-binary entry at ({row}, {col})")]
    NonBinaryResult { row: usize, col: usize },
    #[error("expected {expected} shares, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Stable name of the error class, used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse(_) => "ParseError",
            Error::Shape(_) => "ShapeError",
            Error::SingularMatrix => "SingularMatrix",
            Error::TooLarge(_) => "TooLarge",
            Error::NoNonzeroCodeword => "NoNonzeroCodeword",
            Error::BoundViolation { .. } => "BoundViolation",
            Error::Length(_) => "LengthError",
            Error::Alphabet(_) => "AlphabetError",
            Error::InfeasibleShareCount { .. } => "InfeasibleShareCount",
            Error::NonBinaryResult { .. } => "NonBinaryResult",
            Error::Arity { .. } => "ArityError",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
