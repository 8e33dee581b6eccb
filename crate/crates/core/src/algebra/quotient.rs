use std::sync::Arc;

use fplinalg::FpVector;

use crate::algebra::{FiniteAlgebra, GroupAlgebra, Ideal};
use crate::{Error, Result};

/// `kG / J` for a certified two-sided ideal `J`.
///
/// Quotient elements are coordinate vectors on the transversal, the group
/// elements sitting at non-pivot columns of `J`'s echelon form.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    ambient: Arc<GroupAlgebra>,
    ideal: Ideal,
    transversal: Vec<usize>,
}

impl QuotientAlgebra {
    pub fn new(ambient: Arc<GroupAlgebra>, ideal: Ideal) -> Result<Self> {
        if !ideal.is_certified() {
            return Err(Error::UncertifiedIdeal);
        }
        if ideal.space().ambient_dim() != ambient.dim() || ideal.space().prime() != ambient.p() {
            return Err(Error::ParentMismatch);
        }
        let transversal = ideal.space().non_pivots();
        Ok(Self {
            ambient,
            ideal,
            transversal,
        })
    }

    pub fn ambient(&self) -> &GroupAlgebra {
        &self.ambient
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Group elements whose images form the basis of the quotient.
    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn project(&self, x: &FpVector) -> Result<FpVector> {
        Ok(self.ideal.space().reduce(x)?.select(&self.transversal))
    }

    /// The canonical representative in `kG`, supported on the transversal.
    pub fn lift(&self, q: &FpVector) -> FpVector {
        let mut out = FpVector::zeros(self.ambient.p(), self.ambient.dim()).expect("prime checked");
        for (k, c) in q.nonzero() {
            out.set(self.transversal[k], c);
        }
        out
    }

    /// Image of the basis vector `t_i t_j`, in quotient coordinates.
    pub fn structure_constant(&self, i: usize, j: usize) -> FpVector {
        let g = self.ambient.group();
        let prod = g.mul(self.transversal[i] as u32, self.transversal[j] as u32);
        let e = self.ambient.embed(prod).into_coeffs();
        self.project(&e).expect("shapes agree")
    }
}

impl FiniteAlgebra for QuotientAlgebra {
    fn prime(&self) -> u32 {
        self.ambient.p()
    }

    fn dim(&self) -> usize {
        self.transversal.len()
    }

    fn one_vector(&self) -> FpVector {
        self.project(&self.ambient.one_vector())
            .expect("shapes agree")
    }

    fn mul_vectors(&self, x: &FpVector, y: &FpVector) -> FpVector {
        let prod = self.ambient.mul_vectors(&self.lift(x), &self.lift(y));
        self.project(&prod).expect("shapes agree")
    }

    fn augmentation_of(&self, x: &FpVector) -> u32 {
        x.entry_sum()
    }
}
