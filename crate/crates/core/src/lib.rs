//! Modular group algebras of finite p-groups: pc groups, Jennings theory,
//! isomorphism invariants and certification of group bases.

pub mod algebra;
mod error;
pub mod families;
pub mod invariants;
pub mod jennings;
pub mod pgroup;
pub mod verify;

pub(crate) use error::verification;
pub use error::{Error, Result};
