use serde::Serialize;

use crate::pgroup::{AbelianType, Group};
use crate::Result;

/// Conditions under which the nilpotency class is known to be determined by
/// the group algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassConditions {
    pub exponent_p: bool,
    pub derived_cyclic: bool,
    pub class_two: bool,
    pub maximal_class: bool,
    /// Applies over the prime field only.
    pub derived_elementary_abelian: bool,
}

impl ClassConditions {
    pub fn any(&self) -> bool {
        self.exponent_p
            || self.derived_cyclic
            || self.class_two
            || self.maximal_class
            || self.derived_elementary_abelian
    }
}

/// Group data that are not invariants of the group algebra in general.
/// Never used to compare algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Descriptors {
    pub nilpotency_class: usize,
    pub class_conditions: ClassConditions,
    pub conjugacy_classes: usize,
    pub cyclic_subgroups: usize,
    pub cyclic_subgroup_classes: usize,
    pub derived_centralizer_order: usize,
    pub derived_centralizer_exponent: u64,
    pub derived_centralizer_type: Option<AbelianType>,
}

pub fn descriptors(g: &Group) -> Result<Descriptors> {
    let class = g.nilpotency_class();
    let derived = g.derived_subgroup();
    let (dg, _) = g.subgroup_as_group(&derived)?;
    let derived_type = if dg.is_abelian() {
        Some(dg.abelian_type_of_group()?)
    } else {
        None
    };
    let class_conditions = ClassConditions {
        exponent_p: g.exponent() == g.p() as u64,
        derived_cyclic: derived_type.as_ref().is_some_and(|t| t.rank() <= 1),
        class_two: class == 2,
        maximal_class: g.log_order() >= 2 && class as u32 == g.log_order() - 1,
        derived_elementary_abelian: derived_type.as_ref().is_some_and(|t| t.exponent_log() <= 1),
    };
    let c = g.centralizer(&derived)?;
    let (cg, _) = g.subgroup_as_group(&c)?;
    Ok(Descriptors {
        nilpotency_class: class,
        class_conditions,
        conjugacy_classes: g.conjugacy_classes().len(),
        cyclic_subgroups: g.cyclic_subgroup_count(),
        cyclic_subgroup_classes: g.cyclic_subgroup_class_count(),
        derived_centralizer_order: c.order(),
        derived_centralizer_exponent: cg.exponent(),
        derived_centralizer_type: if cg.is_abelian() {
            Some(cg.abelian_type_of_group()?)
        } else {
            None
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    #[test]
    fn quaternion_descriptors() {
        let d = descriptors(&build(&Family::Quaternion { order: 8 }).unwrap()).unwrap();
        assert_eq!(d.nilpotency_class, 2);
        assert!(d.class_conditions.class_two && d.class_conditions.maximal_class);
        assert_eq!(d.cyclic_subgroup_classes, 5);
        assert_eq!(d.cyclic_subgroups, 5);
    }
}
