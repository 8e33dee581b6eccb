use fplinalg::LinalgError;
use thiserror::Error;

use crate::pgroup::ConsistencyWitness;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("generator index {index} out of range (presentation has {gens} generators)")]
    InvalidGenerator { index: usize, gens: usize },
    #[error("relation {relation} is not supported on later generators")]
    BadRelation { relation: String },
    #[error("inconsistent presentation: {0}")]
    Inconsistent(ConsistencyWitness),
    #[error("operands belong to different parent structures")]
    ParentMismatch,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("section is not abelian")]
    NotAbelian,
    #[error("{what}: size {size} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("ideal has no two-sided closure certificate")]
    UncertifiedIdeal,
    #[error("generator is not normalized (augmentation {0})")]
    NotNormalized(u32),
    #[error("element has augmentation 0 and is not a unit")]
    NotAUnit,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("verification failed at {step}: {detail}")]
    Verification { step: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn verification(step: impl Into<String>, detail: impl Into<String>) -> Error {
    Error::Verification {
        step: step.into(),
        detail: detail.into(),
    }
}
