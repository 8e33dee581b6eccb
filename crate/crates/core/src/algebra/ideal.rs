use std::collections::VecDeque;

use fplinalg::{EchelonSubspace, FpVector};

use crate::algebra::{AlgebraElement, FiniteAlgebra, GroupAlgebra};
use crate::pgroup::Subgroup;
use crate::{Error, Result};

/// A subspace of `F_p[G]` together with whether it was certified to be a
/// two-sided ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub(crate) space: EchelonSubspace,
    pub(crate) two_sided_certified: bool,
}

impl Ideal {
    pub fn space(&self) -> &EchelonSubspace {
        &self.space
    }

    pub fn into_space(self) -> EchelonSubspace {
        self.space
    }

    pub fn is_certified(&self) -> bool {
        self.two_sided_certified
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: &AlgebraElement) -> Result<bool> {
        Ok(self.space.contains(x.coeffs())?)
    }
}

impl GroupAlgebra {
    fn zero_space(&self) -> EchelonSubspace {
        EchelonSubspace::zero(self.p(), self.dim()).expect("order below the dimension cap")
    }

    /// Certifies `space` as a two-sided ideal: every basis row multiplied on
    /// either side by a group generator stays inside.
    pub fn certify_ideal(&self, space: EchelonSubspace) -> Result<Ideal> {
        let gens = self.group().generators();
        for row in space.rows() {
            for &g in gens {
                if !space.contains(&self.mul_group_left(g, row))?
                    || !space.contains(&self.mul_group_right(row, g))?
                {
                    return Err(Error::UncertifiedIdeal);
                }
            }
        }
        Ok(Ideal {
            space,
            two_sided_certified: true,
        })
    }

    /// Two-sided ideal generated by the given vectors.
    pub fn ideal_closure(&self, generators: &[FpVector]) -> Result<Ideal> {
        let mut space = self.zero_space();
        let mut queue: VecDeque<FpVector> = generators.iter().cloned().collect();
        let gens = self.group().generators().to_vec();
        while let Some(v) = queue.pop_front() {
            let r = space.reduce(&v)?;
            if r.is_zero() {
                continue;
            }
            space.insert(r.clone())?;
            for &g in &gens {
                queue.push_back(self.mul_group_left(g, &r));
                queue.push_back(self.mul_group_right(&r, g));
            }
        }
        Ok(Ideal {
            space,
            two_sided_certified: true,
        })
    }

    pub fn ideal_of_elements(&self, generators: &[AlgebraElement]) -> Result<Ideal> {
        let vs: Vec<FpVector> = generators.iter().map(|x| x.coeffs().clone()).collect();
        self.ideal_closure(&vs)
    }

    /// `I^0 = kG, I^1, I^2, ...` down to and including the zero ideal.
    ///
    /// Since `I` is the left ideal generated by the `g_i - 1` for generators
    /// `g_i`, `I^m` is spanned by `x (g_i - 1)` with `x` a basis row of `I^{m-1}`.
    pub fn radical_powers(&self) -> &[EchelonSubspace] {
        self.radical.get_or_init(|| {
            let n = self.dim();
            let p = self.p();
            let mut powers =
                vec![EchelonSubspace::full(p, n).expect("order below the dimension cap")];
            let aug = EchelonSubspace::span(
                p,
                n,
                (1..n as u32).map(|g| self.embed_minus_one(g).into_coeffs()),
            )
            .expect("shapes agree");
            powers.push(aug);
            let gens = self.group().generators().to_vec();
            while !powers.last().expect("nonempty").is_zero() {
                let prev = powers.last().expect("nonempty");
                let mut next = self.zero_space();
                for row in prev.rows() {
                    for &g in &gens {
                        next.insert(self.mul_minus_one(row, g))
                            .expect("shapes agree");
                    }
                }
                powers.push(next);
            }
            powers
        })
    }

    /// `I(kG)^m`; `m = 0` gives the whole algebra and large `m` the zero ideal.
    pub fn radical_power(&self, m: usize) -> &EchelonSubspace {
        let powers = self.radical_powers();
        &powers[m.min(powers.len() - 1)]
    }

    /// Least `t` with `I^t = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.radical_powers().len() - 1
    }

    pub fn augmentation_ideal(&self) -> Ideal {
        Ideal {
            space: self.radical_power(1).clone(),
            two_sided_certified: true,
        }
    }

    pub fn ideal_power(&self, m: usize) -> Ideal {
        Ideal {
            space: self.radical_power(m).clone(),
            two_sided_certified: true,
        }
    }

    /// Span of all products `ab` with `a` in `x` and `b` in `y`.
    pub fn product_subspace(
        &self,
        x: &EchelonSubspace,
        y: &EchelonSubspace,
    ) -> Result<EchelonSubspace> {
        let mut out = self.zero_space();
        for a in x.rows() {
            for b in y.rows() {
                out.insert(self.mul_vectors(a, b))?;
                if out.dim() == self.dim() {
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }

    /// `I(kN) kG`, the kernel of `kG -> k(G/N)`.
    pub fn relative_augmentation_ideal(&self, n: &Subgroup) -> Result<Ideal> {
        let g = self.group();
        g.check_parent(n)?;
        if !g.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut space = self.zero_space();
        for &x in &g.subgroup_generators(n) {
            let xm = self.embed_minus_one(x).into_coeffs();
            for h in g.elements() {
                space.insert(self.mul_group_right(&xm, h))?;
            }
        }
        self.certify_ideal(space)
    }

    /// `[kG, kG]`, spanned by `k - k^h` for group elements `k` and generators `h`.
    pub fn commutator_subspace(&self) -> EchelonSubspace {
        let g = self.group();
        let mut space = self.zero_space();
        for k in g.elements() {
            for &h in g.generators() {
                let c = g.conjugate(k, h);
                if c != k {
                    let v = self
                        .sub(&self.embed(k), &self.embed(c))
                        .expect("same parent");
                    space.insert(v.into_coeffs()).expect("shapes agree");
                }
            }
        }
        space
    }

    /// Class sums, one per conjugacy class, a basis of the center.
    pub fn center_basis(&self) -> Vec<AlgebraElement> {
        self.group()
            .conjugacy_classes()
            .iter()
            .map(|class| {
                let terms: Vec<(u32, i64)> = class.iter().map(|&x| (x, 1)).collect();
                self.from_terms(&terms)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    fn algebra(f: Family) -> GroupAlgebra {
        GroupAlgebra::new(build(&f).unwrap())
    }

    #[test]
    fn radical_layers_of_d16() {
        let a = algebra(Family::Dihedral { order: 16 });
        let dims: Vec<usize> = (1..=8)
            .map(|n| a.radical_power(n).dim() - a.radical_power(n + 1).dim())
            .collect();
        assert_eq!(dims, vec![2, 2, 2, 2, 2, 2, 2, 1]);
        assert_eq!(a.nilpotency_index(), 9);
        assert_eq!(a.augmentation_ideal().dim(), 15);
    }

    #[test]
    fn relative_augmentation_ideals() {
        let a = algebra(Family::Dihedral { order: 8 });
        let g = a.group();
        assert!(a
            .relative_augmentation_ideal(&g.trivial_subgroup())
            .unwrap()
            .space()
            .is_zero());
        assert_eq!(
            a.relative_augmentation_ideal(&g.whole()).unwrap().space(),
            a.augmentation_ideal().space()
        );
        let z = g.center();
        assert_eq!(a.relative_augmentation_ideal(&z).unwrap().dim(), 4);
        let b = g.word(&[(1, 1)]).unwrap();
        let nonnormal = g.subgroup_closure(&[b]).unwrap();
        assert!(matches!(
            a.relative_augmentation_ideal(&nonnormal),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn commutator_subspace_and_center() {
        let a = algebra(Family::Dihedral { order: 8 });
        let c = a.commutator_subspace();
        assert_eq!(c.dim(), 3);
        let basis = a.center_basis();
        assert_eq!(basis.len(), 5);
        for z in &basis {
            for g in a.group().elements() {
                let e = a.embed(g);
                assert_eq!(a.mul(z, &e).unwrap(), a.mul(&e, z).unwrap());
            }
            // non-central class sums lie in the commutator subspace
            if z.coeffs().weight() > 1 {
                assert!(c.contains(z.coeffs()).unwrap());
            }
        }
        let ab = algebra(Family::Abelian {
            p: 3,
            exponents: vec![1, 1],
        });
        assert!(ab.commutator_subspace().is_zero());
    }

    #[test]
    fn ideal_closure_is_two_sided() {
        let a = algebra(Family::Dihedral { order: 8 });
        let x = a.embed_minus_one(a.group().word(&[(1, 1)]).unwrap());
        let j = a.ideal_of_elements(&[x]).unwrap();
        assert!(a.certify_ideal(j.space().clone()).is_ok());
        let line = EchelonSubspace::span(2, 8, [a.embed_minus_one(1).into_coeffs()]).unwrap();
        assert!(matches!(
            a.certify_ideal(line),
            Err(Error::UncertifiedIdeal)
        ));
    }
}
