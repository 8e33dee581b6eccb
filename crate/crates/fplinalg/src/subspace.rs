use crate::scalar::check_prime;
use crate::{FpVector, LinalgError, Result};

/// Largest ambient dimension accepted unless a caller passes its own cap.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// A subspace of `F_p^n` held as a reduced row-echelon basis.
///
/// Rows are sorted by pivot column, every pivot entry is 1, and every other
/// row vanishes in each pivot column. The representation is therefore
/// canonical: two subspaces are equal iff their row lists are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EchelonSubspace {
    p: u32,
    ambient_dim: usize,
    rows: Vec<FpVector>,
    pivots: Vec<usize>,
}

impl EchelonSubspace {
    pub fn zero(p: u32, ambient_dim: usize) -> Result<Self> {
        Self::zero_with_cap(p, ambient_dim, DEFAULT_DIM_CAP)
    }

    pub fn zero_with_cap(p: u32, ambient_dim: usize, cap: usize) -> Result<Self> {
        check_prime(p)?;
        if ambient_dim > cap {
            return Err(LinalgError::DimensionCap {
                dim: ambient_dim,
                cap,
            });
        }
        Ok(Self::zero_unchecked(p, ambient_dim))
    }

    fn zero_unchecked(p: u32, ambient_dim: usize) -> Self {
        Self {
            p,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The whole space `F_p^n`.
    pub fn full(p: u32, ambient_dim: usize) -> Result<Self> {
        let mut s = Self::zero(p, ambient_dim)?;
        for i in 0..ambient_dim {
            s.rows.push(FpVector::unit(p, ambient_dim, i)?);
            s.pivots.push(i);
        }
        Ok(s)
    }

    /// Reduced row-echelon basis of the span of `vectors`.
    pub fn echelonize(p: u32, ambient_dim: usize, vectors: &[FpVector]) -> Result<Self> {
        Self::span(p, ambient_dim, vectors.iter().cloned())
    }

    pub fn span<I>(p: u32, ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = FpVector>,
    {
        let mut s = Self::zero(p, ambient_dim)?;
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[FpVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient_dim - self.dim());
        let mut k = 0;
        for i in 0..self.ambient_dim {
            if k < self.pivots.len() && self.pivots[k] == i {
                k += 1;
            } else {
                out.push(i);
            }
        }
        out
    }

    fn check_vector(&self, v: &FpVector) -> Result<()> {
        if v.prime() != self.p {
            return Err(LinalgError::PrimeMismatch {
                expected: self.p,
                found: v.prime(),
            });
        }
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_peer(&self, other: &Self) -> Result<()> {
        if other.p != self.p {
            return Err(LinalgError::PrimeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        if other.ambient_dim != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    fn reduce_in_place(&self, v: &mut FpVector) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(piv);
            if c != 0 {
                v.add_scaled(row, self.p - c);
            }
        }
    }

    /// Canonical representative of `v + self`: `v` with every pivot column cleared.
    pub fn reduce(&self, v: &FpVector) -> Result<FpVector> {
        self.check_vector(v)?;
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        Ok(out)
    }

    pub fn contains(&self, v: &FpVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Coefficients of `v` in the row basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &FpVector) -> Result<Option<Vec<u32>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&i| v.get(i)).collect()))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: FpVector) -> Result<bool> {
        self.check_vector(&v)?;
        let mut v = v;
        self.reduce_in_place(&mut v);
        let Some(lead) = v.normalize() else {
            return Ok(false);
        };
        for row in &mut self.rows {
            let c = row.get(lead);
            if c != 0 {
                row.add_scaled(&v, self.p - c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_peer(other)?;
        for row in &self.rows {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_peer(other)?;
        let (mut big, small) = if self.dim() >= other.dim() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for row in &small.rows {
            big.insert(row.clone())?;
        }
        Ok(big)
    }

    /// Intersection by block elimination on `[a | a]` and `[b | 0]`: rows whose
    /// left half reduces to zero carry the intersection in their right half.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_peer(other)?;
        let n = self.ambient_dim;
        let mut stacked = Self::zero_unchecked(self.p, 2 * n);
        for a in &self.rows {
            stacked.insert(concat(a, a))?;
        }
        for b in &other.rows {
            stacked.insert(concat(b, &FpVector::zeros_unchecked(self.p, n)))?;
        }
        let right: Vec<usize> = (n..2 * n).collect();
        let mut out = Self::zero_unchecked(self.p, n);
        for (row, &piv) in stacked.rows.iter().zip(&stacked.pivots) {
            if piv >= n {
                out.insert(row.select(&right))?;
            }
        }
        Ok(out)
    }

    /// Image of a subspace under coordinate projection onto `positions`.
    pub fn project(&self, positions: &[usize]) -> Result<Self> {
        let mut out = Self::zero_unchecked(self.p, positions.len());
        for row in &self.rows {
            out.insert(row.select(positions))?;
        }
        Ok(out)
    }

    /// Every vector of the subspace, `p^dim` of them; intended for small dims.
    pub fn elements(&self) -> impl Iterator<Item = FpVector> + '_ {
        let d = self.dim();
        let total = (self.p as u64).pow(d as u32);
        (0..total).map(move |mut code| {
            let mut v = FpVector::zeros_unchecked(self.p, self.ambient_dim);
            for row in &self.rows {
                let c = (code % self.p as u64) as u32;
                code /= self.p as u64;
                v.add_scaled(row, c);
            }
            v
        })
    }
}

fn concat(a: &FpVector, b: &FpVector) -> FpVector {
    let mut out = FpVector::zeros_unchecked(a.prime(), a.len() + b.len());
    for (i, c) in a.nonzero() {
        out.set(i, c);
    }
    for (i, c) in b.nonzero() {
        out.set(a.len() + i, c);
    }
    out
}

/// Rank of a list of vectors of common length `len`.
pub fn rank(p: u32, len: usize, vectors: &[FpVector]) -> Result<usize> {
    let mut s = EchelonSubspace::zero_with_cap(p, len, usize::MAX)?;
    for v in vectors {
        s.insert(v.clone())?;
        if s.dim() == len {
            break;
        }
    }
    Ok(s.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u32, e: &[i64]) -> FpVector {
        FpVector::from_entries(p, e).unwrap()
    }

    #[test]
    fn echelonize_hand_example_over_f3() {
        let s = EchelonSubspace::echelonize(
            3,
            3,
            &[v(3, &[1, 1, 0]), v(3, &[0, 1, 1]), v(3, &[1, 0, -1])],
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.rows()[0].entries(), vec![1, 0, 2]);
        assert_eq!(s.rows()[1].entries(), vec![0, 1, 1]);
    }

    #[test]
    fn empty_and_zero_inputs_span_nothing() {
        assert_eq!(EchelonSubspace::echelonize(2, 4, &[]).unwrap().dim(), 0);
        let z = EchelonSubspace::echelonize(5, 4, &[v(5, &[0, 0, 0, 0])]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let err = EchelonSubspace::echelonize(2, 3, &[v(2, &[1, 0])]).unwrap_err();
        assert!(matches!(err, LinalgError::DimensionMismatch { .. }));
        let err = EchelonSubspace::echelonize(2, 2, &[v(3, &[1, 0])]).unwrap_err();
        assert!(matches!(err, LinalgError::PrimeMismatch { .. }));
        assert!(matches!(
            EchelonSubspace::zero(2, DEFAULT_DIM_CAP + 1),
            Err(LinalgError::DimensionCap { .. })
        ));
    }

    #[test]
    fn complementary_lines() {
        let a = EchelonSubspace::echelonize(2, 2, &[v(2, &[1, 1])]).unwrap();
        let b = EchelonSubspace::echelonize(2, 2, &[v(2, &[0, 1])]).unwrap();
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap(), a);
    }

    #[test]
    fn reduce_gives_canonical_coset_representative() {
        let a = EchelonSubspace::echelonize(3, 3, &[v(3, &[1, 2, 0])]).unwrap();
        let x = v(3, &[2, 2, 1]);
        let y = x.add(&a.rows()[0].scaled(2)).unwrap();
        assert_eq!(a.reduce(&x).unwrap(), a.reduce(&y).unwrap());
        assert_eq!(a.reduce(&x).unwrap().get(0), 0);
        assert_eq!(
            a.coordinates(&a.rows()[0].scaled(2)).unwrap(),
            Some(vec![2])
        );
        assert_eq!(a.coordinates(&x).unwrap(), None);
    }

    #[test]
    fn non_pivots_complete_the_basis() {
        let a =
            EchelonSubspace::echelonize(2, 5, &[v(2, &[0, 1, 1, 0, 0]), v(2, &[0, 0, 0, 1, 1])])
                .unwrap();
        assert_eq!(a.non_pivots(), vec![0, 2, 4]);
    }
}
