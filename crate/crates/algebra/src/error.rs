use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials live in rings with {left} and {right} variables")]
    RingMismatch { left: usize, right: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("entry ({row}, {col}) is not homogeneous of degree {expected}")]
    NotHomogeneous { row: usize, col: usize, expected: i64 },
}
