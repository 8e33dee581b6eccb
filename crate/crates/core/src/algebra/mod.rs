//! The modular group algebra `F_p[G]` and its ideals, quotients and units.

mod ideal;
mod quotient;
mod units;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use fplinalg::{EchelonSubspace, FpScalar, FpVector};

use crate::pgroup::Group;
use crate::{Error, Result};

pub use ideal::Ideal;
pub use quotient::QuotientAlgebra;
pub use units::{enumerate_normalized_units, unit_closure, UnitClosure, DEFAULT_UNIT_CAP};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A finite-dimensional associative `F_p`-algebra with identity, acting on
/// coefficient vectors in a fixed basis.
pub trait FiniteAlgebra {
    fn prime(&self) -> u32;
    fn dim(&self) -> usize;
    fn one_vector(&self) -> FpVector;
    fn mul_vectors(&self, x: &FpVector, y: &FpVector) -> FpVector;
    fn augmentation_of(&self, x: &FpVector) -> u32;

    fn pow_vector(&self, x: &FpVector, mut k: u64) -> FpVector {
        let mut base = x.clone();
        let mut acc = self.one_vector();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_vectors(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_vectors(&base, &base);
            }
        }
        acc
    }

    /// Inverse of an element of nonzero augmentation `c`, from the finite
    /// geometric series in the nilpotent element `u = 1 - x/c`.
    fn inverse_vector(&self, x: &FpVector) -> Result<FpVector> {
        let c = self.augmentation_of(x);
        if c == 0 {
            return Err(Error::NotAUnit);
        }
        let p = self.prime();
        let c_inv = FpScalar::new(c as i64, p)?.inv()?.value();
        let one = self.one_vector();
        let mut u = one.clone();
        u.add_scaled(x, p - c_inv);
        let mut sum = one.clone();
        let mut term = u.clone();
        for _ in 0..self.dim() {
            if term.is_zero() {
                return Ok(sum.scaled(c_inv));
            }
            sum.add_scaled(&term, 1);
            term = self.mul_vectors(&term, &u);
        }
        Err(Error::NotAUnit)
    }
}

/// `F_p[G]` with basis the elements of `G` in their index order.
#[derive(Debug)]
pub struct GroupAlgebra {
    id: u64,
    group: Arc<Group>,
    radical: OnceLock<Vec<EchelonSubspace>>,
}

/// An element `sum r_g g` of a [`GroupAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    algebra_id: u64,
    coeffs: FpVector,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &FpVector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> FpVector {
        self.coeffs
    }

    pub fn coefficient(&self, g: u32) -> u32 {
        self.coeffs.get(g as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

impl GroupAlgebra {
    pub fn new(group: impl Into<Arc<Group>>) -> Self {
        Self {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            group: group.into(),
            radical: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<Group> {
        Arc::clone(&self.group)
    }

    pub fn p(&self) -> u32 {
        self.group.p()
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    fn wrap(&self, coeffs: FpVector) -> AlgebraElement {
        AlgebraElement {
            algebra_id: self.id,
            coeffs,
        }
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.algebra_id != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(FpVector::zeros(self.p(), self.group.order()).expect("prime checked"))
    }

    pub fn one(&self) -> AlgebraElement {
        self.embed(0)
    }

    pub fn embed(&self, g: u32) -> AlgebraElement {
        let mut v = self.zero();
        v.coeffs.set(g as usize, 1);
        v
    }

    /// `g - 1`.
    pub fn embed_minus_one(&self, g: u32) -> AlgebraElement {
        let mut v = self.embed(g);
        v.coeffs.add_at(0, self.p() - 1);
        v
    }

    /// Wraps a coefficient vector of length `|G|`.
    pub fn element(&self, coeffs: FpVector) -> Result<AlgebraElement> {
        if coeffs.prime() != self.p() {
            return Err(Error::PrimeMismatch(self.p(), coeffs.prime()));
        }
        if coeffs.len() != self.group.order() {
            return Err(fplinalg::LinalgError::DimensionMismatch {
                expected: self.group.order(),
                found: coeffs.len(),
            }
            .into());
        }
        Ok(self.wrap(coeffs))
    }

    /// `sum c_i g_i` from `(g_i, c_i)` pairs.
    pub fn from_terms(&self, terms: &[(u32, i64)]) -> AlgebraElement {
        let mut v = self.zero();
        let p = self.p() as i64;
        for &(g, c) in terms {
            v.coeffs.add_at(g as usize, c.rem_euclid(p) as u32);
        }
        v
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(x.coeffs.add(&y.coeffs)?))
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(x.coeffs.sub(&y.coeffs)?))
    }

    pub fn scalar_mul(&self, c: i64, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(self.wrap(x.coeffs.scaled(c.rem_euclid(self.p() as i64) as u32)))
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_vectors(&x.coeffs, &y.coeffs)))
    }

    /// Product of a list of elements, left to right.
    pub fn product(&self, factors: &[&AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &AlgebraElement, k: u64) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(self.wrap(self.pow_vector(&x.coeffs, k)))
    }

    pub fn augmentation(&self, x: &AlgebraElement) -> Result<FpScalar> {
        self.check(x)?;
        Ok(FpScalar::new(x.coeffs.entry_sum() as i64, self.p())?)
    }

    /// Inverse of an element of nonzero augmentation.
    pub fn normalized_unit_inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(self.wrap(self.inverse_vector(&x.coeffs)?))
    }

    /// Right multiplication by the basis element `h`.
    pub fn mul_group_right(&self, x: &FpVector, h: u32) -> FpVector {
        let mut out = FpVector::zeros(self.p(), self.group.order()).expect("prime checked");
        for (g, c) in x.nonzero() {
            out.set(self.group.mul(g as u32, h) as usize, c);
        }
        out
    }

    /// Left multiplication by the basis element `h`.
    pub fn mul_group_left(&self, h: u32, x: &FpVector) -> FpVector {
        let mut out = FpVector::zeros(self.p(), self.group.order()).expect("prime checked");
        for (g, c) in x.nonzero() {
            out.set(self.group.mul(h, g as u32) as usize, c);
        }
        out
    }

    /// `x (g - 1)`.
    pub(crate) fn mul_minus_one(&self, x: &FpVector, g: u32) -> FpVector {
        let mut out = self.mul_group_right(x, g);
        out.add_scaled(x, self.p() - 1);
        out
    }
}

impl FiniteAlgebra for GroupAlgebra {
    fn prime(&self) -> u32 {
        self.p()
    }

    fn dim(&self) -> usize {
        self.group.order()
    }

    fn one_vector(&self) -> FpVector {
        self.one().coeffs
    }

    fn mul_vectors(&self, x: &FpVector, y: &FpVector) -> FpVector {
        let p = self.p();
        let mut out = FpVector::zeros(p, self.group.order()).expect("prime checked");
        let xs: Vec<(usize, u32)> = x.nonzero().collect();
        for (h, d) in y.nonzero() {
            for &(g, c) in &xs {
                out.add_at(self.group.mul(g as u32, h as u32) as usize, c * d % p);
            }
        }
        out
    }

    fn augmentation_of(&self, x: &FpVector) -> u32 {
        x.entry_sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};
    use rand::{Rng, SeedableRng};

    fn algebra(f: Family) -> GroupAlgebra {
        GroupAlgebra::new(build(&f).unwrap())
    }

    #[test]
    fn embedding_is_multiplicative() {
        let a = algebra(Family::Dihedral { order: 8 });
        for g in a.group().elements() {
            for h in a.group().elements() {
                let prod = a.mul(&a.embed(g), &a.embed(h)).unwrap();
                assert_eq!(prod, a.embed(a.group().mul(g, h)));
            }
        }
    }

    #[test]
    fn unit_of_order_three_in_f3_c3() {
        let a = algebra(Family::Cyclic { p: 3, log_order: 1 });
        let g = a.group().word(&[(0, 1)]).unwrap();
        let g2 = a.group().mul(g, g);
        let u = a.from_terms(&[(0, 1), (g, 1), (g2, -1)]);
        assert_eq!(a.pow(&u, 3).unwrap(), a.one());
        assert_eq!(a.augmentation(&u).unwrap().value(), 1);
        assert_eq!(
            a.normalized_unit_inverse(&u).unwrap(),
            a.pow(&u, 2).unwrap()
        );
    }

    #[test]
    fn basic_identity_for_products_minus_one() {
        let a = algebra(Family::Quaternion { order: 16 });
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let g = rng.gen_range(0..16u32);
            let h = rng.gen_range(0..16u32);
            let (gm, hm) = (a.embed_minus_one(g), a.embed_minus_one(h));
            let lhs = a.embed_minus_one(a.group().mul(g, h));
            let rhs = a
                .add(&a.add(&gm, &hm).unwrap(), &a.mul(&gm, &hm).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverses_of_random_normalized_elements() {
        let a = algebra(Family::Dihedral { order: 8 });
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..1000 {
            let mut x = a.zero();
            for g in 0..8u32 {
                if rng.gen_bool(0.5) {
                    x = a.add(&x, &a.embed(g)).unwrap();
                }
            }
            if a.augmentation(&x).unwrap().value() == 0 {
                assert!(matches!(
                    a.normalized_unit_inverse(&x),
                    Err(Error::NotAUnit)
                ));
                continue;
            }
            let y = a.normalized_unit_inverse(&x).unwrap();
            assert_eq!(a.mul(&x, &y).unwrap(), a.one());
            assert_eq!(a.mul(&y, &x).unwrap(), a.one());
        }
    }

    #[test]
    fn augmentation_values() {
        let a = algebra(Family::Dihedral { order: 8 });
        assert_eq!(a.augmentation(&a.embed(5)).unwrap().value(), 1);
        let d = a.sub(&a.embed(5), &a.embed(3)).unwrap();
        assert_eq!(a.augmentation(&d).unwrap().value(), 0);
        assert_eq!(
            a.normalized_unit_inverse(&a.embed(5)).unwrap(),
            a.embed(a.group().inv(5))
        );
    }

    #[test]
    fn parent_mismatch() {
        let a = algebra(Family::Dihedral { order: 8 });
        let b = algebra(Family::Dihedral { order: 8 });
        assert!(matches!(
            a.mul(&a.one(), &b.one()),
            Err(Error::ParentMismatch)
        ));
    }
}
