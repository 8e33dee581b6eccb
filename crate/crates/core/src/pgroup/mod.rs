//! Finite p-groups: pc presentations, multiplication tables, subgroups.

mod abelian;
mod elementary;
mod group;
mod iso;
mod presentation;
pub(crate) mod subgroup;

pub use abelian::AbelianType;
pub use group::{Group, DEFAULT_ORDER_CAP};
pub use iso::{find_isomorphism, is_isomorphic_small, DEFAULT_ISO_CAP};
pub use presentation::{ConsistencyWitness, PcPresentation};
pub use subgroup::{DimensionSeries, Subgroup};
