use std::sync::Arc;

use fplinalg::{EchelonSubspace, FpVector};

use crate::algebra::{
    enumerate_normalized_units, FiniteAlgebra, GroupAlgebra, Ideal, QuotientAlgebra, UnitClosure,
};
use crate::jennings::JenningsData;
use crate::pgroup::Group;
use crate::{verification, Error, Result};

/// Default bound on the number of elements enumerated for one power span.
pub const DEFAULT_POWER_ENUMERATION_CAP: u64 = 1 << 20;

/// `I^{[1]} = I` and `I^{[i]} = [I^{[i-1]}, I]`, the latter spanned by
/// `xg - gx` for basis rows `x` of `I^{[i-1]}` and group elements `g`.
pub fn lie_power_subspace(alg: &GroupAlgebra, i: usize) -> Result<EchelonSubspace> {
    assert!(i >= 1, "Lie powers are indexed from 1");
    let mut current = alg.radical_power(1).clone();
    for _ in 1..i {
        if current.is_zero() {
            break;
        }
        current = lie_step(alg, &current)?;
    }
    Ok(current)
}

fn lie_step(alg: &GroupAlgebra, prev: &EchelonSubspace) -> Result<EchelonSubspace> {
    let mut next = EchelonSubspace::zero(alg.p(), alg.dim())?;
    for x in prev.rows() {
        for g in alg.group().elements().skip(1) {
            let mut v = alg.mul_group_right(x, g);
            v.add_scaled(&alg.mul_group_left(g, x), alg.p() - 1);
            next.insert(v)?;
        }
    }
    Ok(next)
}

/// The ideal `L_n(kG)` with its defining level.
#[derive(Clone, Debug)]
pub struct ZassenhausIdeal {
    pub n: usize,
    pub ideal: Ideal,
}

/// `L_n = sum_{i p^j >= n} span{x^{p^j} : x in I^{[i]}} + I^{n+1}`, checked
/// against `(D_n - 1) + I^{n+1}`.
///
/// For `x in I^{[i]}`, `x^{p^j}` modulo `I^{i p^j + 1}` depends only on `x`
/// modulo `I^{i+1}`, so it suffices to enumerate combinations of rows of
/// `I^{[i]}` that are independent modulo `I^{i+1}`. Only the least `i` with
/// `i p^j >= n` matters since the Lie powers decrease.
pub fn zassenhaus_ideal(alg: &GroupAlgebra, n: usize, cap: u64) -> Result<ZassenhausIdeal> {
    assert!(n >= 1, "Zassenhaus ideals are indexed from 1");
    let p = alg.p() as usize;
    let mut space = alg.radical_power(n + 1).clone();
    let mut lie = vec![alg.radical_power(1).clone()];
    let mut pj = 1usize;
    while pj <= n {
        let i = n.div_ceil(pj);
        while lie.len() < i {
            let next = lie_step(alg, lie.last().expect("nonempty"))?;
            lie.push(next);
        }
        let mut modulus = alg.radical_power(i + 1).clone();
        let mut reps = Vec::new();
        for row in lie[i - 1].rows() {
            if modulus.insert(row.clone())? {
                reps.push(row.clone());
            }
        }
        let count = (p as u64)
            .checked_pow(reps.len() as u32)
            .unwrap_or(u64::MAX);
        if count > cap {
            return Err(Error::CapExceeded {
                what: "power span enumeration",
                size: count as u128,
                cap: cap as u128,
            });
        }
        for x in combinations(alg.p(), alg.dim(), &reps) {
            space.insert(alg.pow_vector(&x, pj as u64))?;
        }
        pj *= p;
    }

    let series = alg.group().dimension_subgroups()?;
    let mut expected = alg.radical_power(n + 1).clone();
    for &g in series.term(n).members() {
        expected.insert(alg.embed_minus_one(g).into_coeffs())?;
    }
    if space != expected {
        return Err(verification(
            "Zassenhaus ideal",
            format!(
                "L_{n} has dimension {} but (D_{n} - 1) + I^{} has dimension {}",
                space.dim(),
                n + 1,
                expected.dim()
            ),
        ));
    }
    Ok(ZassenhausIdeal {
        n,
        ideal: alg.certify_ideal(space)?,
    })
}

/// All `F_p`-combinations of `basis`.
pub(crate) fn combinations(
    p: u32,
    dim: usize,
    basis: &[FpVector],
) -> impl Iterator<Item = FpVector> + '_ {
    let total = (p as u64).pow(basis.len() as u32);
    (0..total).map(move |mut code| {
        let mut v = FpVector::zeros(p, dim).expect("prime checked");
        for b in basis {
            v.add_scaled(b, (code % p as u64) as u32);
            code /= p as u64;
        }
        v
    })
}

/// An ideal `C` with `I^2/I^3 = L_2/I^3 + C/I^3` (direct), the quotient
/// `kG/C`, and its group of normalized units.
#[derive(Debug)]
pub struct L2Complement {
    pub ideal: Ideal,
    pub quotient: QuotientAlgebra,
    pub units: UnitClosure,
    pub unit_group: Group,
}

/// Builds `C` from `I^3` and the weight-2 Jennings monomials outside
/// `L_2 + I^3`. Any subspace between `I^3` and `I^2` is an ideal.
pub fn complement_of_l2(
    alg: &Arc<GroupAlgebra>,
    jennings: &JenningsData,
    unit_cap: usize,
) -> Result<L2Complement> {
    let l2 = zassenhaus_ideal(alg, 2, DEFAULT_POWER_ENUMERATION_CAP)?;
    let mut covered = l2.ideal.space().clone();
    let mut c = alg.radical_power(3).clone();
    for k in jennings.of_weight(2) {
        let v = jennings.vectors()[k].clone();
        if covered.insert(v.clone())? {
            c.insert(v)?;
        }
    }
    if &covered != alg.radical_power(2) {
        return Err(verification(
            "L_2 complement",
            "weight-2 monomials do not fill I^2 / I^3",
        ));
    }
    let ideal = alg.certify_ideal(c)?;
    let quotient = QuotientAlgebra::new(Arc::clone(alg), ideal.clone())?;
    let units = enumerate_normalized_units(&quotient, unit_cap)?;
    let unit_group = units.to_group(&quotient)?;
    Ok(L2Complement {
        ideal,
        quotient,
        units,
        unit_group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};
    use crate::jennings::jennings_basis;
    use crate::pgroup::is_isomorphic_small;

    fn algebra(f: Family) -> Arc<GroupAlgebra> {
        Arc::new(GroupAlgebra::new(build(&f).unwrap()))
    }

    #[test]
    fn lie_powers_meet_the_lower_central_series() {
        for fam in [
            Family::Dihedral { order: 8 },
            Family::Quaternion { order: 16 },
            Family::Heisenberg { p: 3 },
        ] {
            let a = algebra(fam);
            let gamma = a.group().lower_central_series();
            for (k, term) in gamma.iter().enumerate() {
                let n = k + 1;
                let lhs = lie_power_subspace(&a, n)
                    .unwrap()
                    .sum(a.radical_power(n + 1))
                    .unwrap();
                let rel = a.relative_augmentation_ideal(term).unwrap();
                let rhs = rel.space().sum(a.radical_power(n + 1)).unwrap();
                assert_eq!(lhs, rhs, "n = {n}");
            }
        }
        let ab = algebra(Family::Abelian {
            p: 2,
            exponents: vec![2, 1],
        });
        assert!(lie_power_subspace(&ab, 2).unwrap().is_zero());
    }

    #[test]
    fn l2_of_d8_is_one_dimensional_mod_i3() {
        let a = algebra(Family::Dihedral { order: 8 });
        let l1 = zassenhaus_ideal(&a, 1, DEFAULT_POWER_ENUMERATION_CAP).unwrap();
        assert_eq!(l1.ideal.space(), a.radical_power(1));
        let l2 = zassenhaus_ideal(&a, 2, DEFAULT_POWER_ENUMERATION_CAP).unwrap();
        assert_eq!(l2.ideal.dim() - a.radical_power(3).dim(), 1);
    }

    #[test]
    fn complement_quotients_recover_the_group() {
        for fam in [
            Family::Dihedral { order: 8 },
            Family::Quaternion { order: 8 },
        ] {
            let a = algebra(fam);
            let j = jennings_basis(&a).unwrap();
            let c = complement_of_l2(&a, &j, 1 << 10).unwrap();
            assert_eq!(c.quotient.dim(), 4);
            assert_eq!(c.units.order(), 8);
            assert!(is_isomorphic_small(&c.unit_group, a.group(), 128).unwrap());
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let a = algebra(Family::Elementary { p: 2, rank: 4 });
        assert!(matches!(
            zassenhaus_ideal(&a, 1, 4),
            Err(Error::CapExceeded { .. })
        ));
    }
}
