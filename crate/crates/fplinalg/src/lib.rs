//! Exact linear algebra over prime fields `F_p`.
//!
//! Vectors over `F_2` are stored bit-packed in `u64` words; every other prime
//! uses one byte per residue. Subspaces are kept in reduced row-echelon form,
//! which makes membership, canonical coset representatives and equality tests
//! cheap.

mod error;
mod scalar;
mod subspace;
mod vector;

pub use error::LinalgError;
pub use scalar::{is_prime, FpScalar};
pub use subspace::{rank, EchelonSubspace, DEFAULT_DIM_CAP};
pub use vector::FpVector;

pub type Result<T> = std::result::Result<T, LinalgError>;
