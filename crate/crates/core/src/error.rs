use thiserror::Error;

use crate::rational::ParseRationalError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("transform is singular")]
    SingularTransform,
    #[error("unsupported dimension: n = {0}")]
    UnsupportedDimension(i64),
    #[error("the intersection is singular: the determinant form is not squarefree")]
    SingularIntersection,
    #[error("empty sequence")]
    EmptySequence,
    #[error("sequence entries must be positive")]
    NonPositivePart,
    #[error("sign word has an odd number of -1 entries")]
    OddNegativeCount,
    #[error("sign word has even length {0}")]
    EvenWordLength(usize),
    #[error("no signature profile realises {0}")]
    InconsistentInvariant(String),
    #[error("invalid invariant {inv} for n = {n}: {reason}")]
    InvalidInvariant { inv: String, n: usize, reason: String },
    #[error("invalid signature profile: {0}")]
    InvalidProfile(String),
    #[error("weights have different parity")]
    ParityMismatch,
    #[error("index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
