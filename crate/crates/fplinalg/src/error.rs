use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("prime mismatch: expected {expected}, found {found}")]
    PrimeMismatch { expected: u32, found: u32 },
    #[error("{0} is not a supported prime (must be prime and below 256)")]
    NotPrime(u32),
    #[error("ambient dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
}
