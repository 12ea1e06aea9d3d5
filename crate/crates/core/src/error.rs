use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a valid generator or factorization input")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("{modulus} must be an odd prime")]
    EvenModulus { modulus: BigInt },
    #[error("{value} is divisible by {prime}")]
    NotCoprime { value: BigInt, prime: BigInt },
    #[error("matrix rows have inconsistent lengths (expected {expected}, row {row} has {found})")]
    Ragged {
        expected: usize,
        row: usize,
        found: usize,
    },
    #[error("Seifert matrix must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("det(V - V^T) = {0}, expected 1")]
    NotUnimodular(BigInt),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("symmetrized form degenerate")]
    Degenerate,
    #[error("symmetrized Seifert form must have even diagonal, entry {0} is odd")]
    OddDiagonal(usize),
    #[error("impossible signature jump: a positive crossing change moves {from} to {to}")]
    SignatureJump { from: i64, to: i64 },
    #[error("knot determinant must be odd and positive, got {0}")]
    BadDeterminant(i128),
    #[error("determinant {0} exceeds the supported range")]
    DeterminantOverflow(BigInt),
    #[error("signature must be even, got {0}")]
    OddSignature(i64),
    #[error("a undefined: equal determinants with equal signatures")]
    UndefinedPivot,
    #[error("no target row for {case} with signature {sigma}")]
    InapplicableCase { case: &'static str, sigma: i64 },
    #[error("determinant sequence must hold at least two knots and end at the unknot")]
    BadSequence,
    #[error("lens space L({p}, {q}) requires p != 0 and gcd(p, q) = 1")]
    BadLens { p: i64, q: i64 },
    #[error("lens space order |{p}| does not match determinant {det}")]
    LensMismatch { p: i64, det: u64 },
    #[error("invalid pretzel parameters: {0}")]
    Pretzel(String),
    #[error("n must be at least 2, got {0}")]
    TooSmall(u32),
    #[error("determinant {0} is not an integer")]
    NotIntegral(String),
    #[error("record {record:?} failed validation: {message}")]
    Validation { record: String, message: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
