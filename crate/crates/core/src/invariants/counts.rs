use fplinalg::{rank, FpVector};

use crate::algebra::{FiniteAlgebra, GroupAlgebra};
use crate::pgroup::subgroup::log_p;
use crate::pgroup::Group;
use crate::{verification, Result};

/// Class index of every element.
fn class_of(g: &Group, classes: &[Vec<u32>]) -> Vec<usize> {
    let mut out = vec![0; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            out[x as usize] = i;
        }
    }
    out
}

/// For each class, the class of the `p^n`-th powers of its elements.
fn power_targets(g: &Group, classes: &[Vec<u32>], n: u32) -> Vec<usize> {
    let of = class_of(g, classes);
    let e = (g.p() as u64).pow(n);
    classes
        .iter()
        .map(|c| of[g.pow(c[0], e) as usize])
        .collect()
}

/// Number of conjugacy classes that are `p^n`-th powers of classes.
pub fn kuelshammer_count_group(g: &Group, n: u32) -> u64 {
    let classes = g.conjugacy_classes();
    let mut t = power_targets(g, &classes, n);
    t.sort_unstable();
    t.dedup();
    t.len() as u64
}

/// Rank of the `p^n`-power map on `kG / [kG, kG]`, which is additive there.
pub fn kuelshammer_count_algebra(alg: &GroupAlgebra, n: u32) -> Result<u64> {
    let comm = alg.commutator_subspace();
    let e = (alg.p() as u64).pow(n);
    let images: Vec<FpVector> = comm
        .non_pivots()
        .into_iter()
        .map(|t| comm.reduce(&alg.pow_vector(alg.embed(t as u32).coeffs(), e)))
        .collect::<std::result::Result<_, _>>()?;
    Ok(rank(alg.p(), alg.dim(), &images)? as u64)
}

/// Number of classes `C` with some class `D` of the same size whose
/// `p^n`-th powers lie in `C`.
pub fn pm_count_group(g: &Group, n: u32) -> u64 {
    let classes = g.conjugacy_classes();
    let t = power_targets(g, &classes, n);
    let mut hit = vec![false; classes.len()];
    for (d, &c) in t.iter().enumerate() {
        if classes[d].len() == classes[c].len() {
            hit[c] = true;
        }
    }
    hit.iter().filter(|&&h| h).count() as u64
}

/// Rank of the `p^n`-power map on `Z(kG)`, which is linear since `Z(kG)` is
/// commutative, evaluated on the class sums.
pub fn pm_count_algebra(alg: &GroupAlgebra, n: u32) -> Result<u64> {
    let e = (alg.p() as u64).pow(n);
    let images: Vec<FpVector> = alg
        .center_basis()
        .iter()
        .map(|z| alg.pow_vector(z.coeffs(), e))
        .collect();
    Ok(rank(alg.p(), alg.dim(), &images)? as u64)
}

fn both(what: &str, n: u32, group: u64, algebra: u64) -> Result<u64> {
    if group != algebra {
        return Err(verification(
            what,
            format!("n = {n}: group side {group}, algebra side {algebra}"),
        ));
    }
    Ok(group)
}

/// Külshammer count, computed both ways and required to agree.
pub fn kuelshammer_count(alg: &GroupAlgebra, n: u32) -> Result<u64> {
    both(
        "Kuelshammer count",
        n,
        kuelshammer_count_group(alg.group(), n),
        kuelshammer_count_algebra(alg, n)?,
    )
}

/// Parmenter–Polcino Milies count, computed both ways and required to agree.
pub fn pm_count(alg: &GroupAlgebra, n: u32) -> Result<u64> {
    both(
        "Parmenter-Polcino Milies count",
        n,
        pm_count_group(alg.group(), n),
        pm_count_algebra(alg, n)?,
    )
}

/// `sum over classes g^G of log_p |C_G(g) / Phi(C_G(g))|`.
pub fn roggenkamp_parameter(g: &Group) -> Result<u64> {
    let mut total = 0u64;
    for class in g.conjugacy_classes() {
        let c = g.centralizer(&g.subgroup_closure(&[class[0]])?)?;
        let (cg, _) = g.subgroup_as_group(&c)?;
        total += log_p(cg.order() / cg.frattini().order(), g.p()) as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    fn alg(f: Family) -> GroupAlgebra {
        GroupAlgebra::new(build(&f).unwrap())
    }

    #[test]
    fn dihedral_eight() {
        let a = alg(Family::Dihedral { order: 8 });
        assert_eq!(kuelshammer_count(&a, 0).unwrap(), 5);
        assert_eq!(kuelshammer_count(&a, 1).unwrap(), 2);
        assert_eq!(kuelshammer_count(&a, 2).unwrap(), 1);
        assert_eq!(pm_count(&a, 0).unwrap(), 5);
        assert_eq!(pm_count(&a, 1).unwrap(), 1);
        assert_eq!(roggenkamp_parameter(a.group()).unwrap(), 9);
    }

    #[test]
    fn abelian_cases() {
        let a = alg(Family::Abelian {
            p: 3,
            exponents: vec![2, 1],
        });
        // the cubes form a group of order 3
        assert_eq!(kuelshammer_count(&a, 1).unwrap(), 3);
        assert_eq!(pm_count(&a, 1).unwrap(), 3);
        assert_eq!(roggenkamp_parameter(a.group()).unwrap(), 2 * 27);
        let e = alg(Family::Elementary { p: 2, rank: 3 });
        assert_eq!(roggenkamp_parameter(e.group()).unwrap(), 3 * 8);
        let c = alg(Family::Cyclic { p: 5, log_order: 1 });
        assert_eq!(roggenkamp_parameter(c.group()).unwrap(), 5);
    }
}
