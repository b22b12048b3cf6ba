use brane_algebra::AlgebraError;
use thiserror::Error;

use crate::gauge::Finding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("objects live over rings with {left} and {right} variables")]
    RingMismatch { left: usize, right: usize },
    #[error("map sends source relation {relation} outside the target relations")]
    NotWellDefined { relation: usize },
    #[error("d^{} after d^{} is not zero", .degree + 1, .degree)]
    NotAComplex { degree: i64 },
    #[error("map does not commute with the differentials at degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("saturation did not stabilize within {cap} steps")]
    SaturationCap { cap: usize },
    #[error("free resolution exceeds length {max_len}")]
    ResolutionTooLong { max_len: usize },
    #[error("sequence is not exact at {position} (generator degree {degree})")]
    NotExact { position: &'static str, degree: i64 },
    #[error("x0 is a zero divisor: x0 * ({witness}) = 0")]
    ZeroDivisor { witness: String },
    #[error("generator index {k} outside 1..={max}")]
    IndexOutOfRange { k: usize, max: usize },
    #[error("projective dimension {n} outside 1..=4")]
    UnsupportedDimension { n: usize },
    #[error("Čech dimension did not stabilize: {at_bound} at bound {bound}, {at_next} at bound {}", .bound + 1)]
    NotStabilized { bound: u32, at_bound: usize, at_next: usize },
    #[error("term in degree {degree} has no declared generator decomposition")]
    UndeclaredTerm { degree: i64 },
    #[error("{0}")]
    Finding(Finding),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
