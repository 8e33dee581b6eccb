use std::collections::HashMap;

use fplinalg::{EchelonSubspace, FpVector};

use crate::algebra::{FiniteAlgebra, GroupAlgebra};
use crate::jennings::{combinations, JenningsData};
use crate::{verification, Result};

/// Default bound on the number of cosets enumerated for one kernel size.
pub const DEFAULT_KERNEL_CAP: u64 = 1 << 16;

/// Coordinates of `I^w / I^{w+1}` in the weight-`w` Jennings monomials.
struct Layer {
    dim: usize,
    /// Rows `[m_k mod I^{w+1} | e_k]`; reducing `[v | 0]` leaves `[0 | -coords(v)]`.
    solver: EchelonSubspace,
    basis: Vec<FpVector>,
}

/// Kernel sizes of the `p^s`-power maps `I^i/I^{i+1} -> I^{ip^s}/I^{ip^s+1}`.
///
/// The class of `x^{p^s}` modulo `I^{ip^s+1}` depends only on `x` modulo
/// `I^{i+1}`, so it is enough to power the combinations of weight-`i`
/// Jennings monomials. Over `F_2` squaring is a quadratic map on layer
/// coordinates, `(sum c_k m_k)^2 = sum c_k m_k^2 + sum_{k<l} c_k c_l (m_k m_l + m_l m_k)`,
/// and is evaluated from precomputed tables.
pub struct KernelSizer<'a> {
    alg: &'a GroupAlgebra,
    jennings: &'a JenningsData,
    cap: u64,
    layers: HashMap<usize, Layer>,
    squares: HashMap<usize, (Vec<FpVector>, Vec<Vec<FpVector>>)>,
}

impl<'a> KernelSizer<'a> {
    pub fn new(alg: &'a GroupAlgebra, jennings: &'a JenningsData, cap: u64) -> Self {
        Self {
            alg,
            jennings,
            cap,
            layers: HashMap::new(),
            squares: HashMap::new(),
        }
    }

    fn layer(&mut self, w: usize) -> Result<&Layer> {
        if !self.layers.contains_key(&w) {
            let basis: Vec<FpVector> = self
                .jennings
                .of_weight(w as u32)
                .map(|k| self.jennings.vectors()[k].clone())
                .collect();
            let modulus = self.alg.radical_power(w + 1);
            let n = self.alg.dim();
            let d = basis.len();
            let p = self.alg.p();
            let mut solver = EchelonSubspace::zero(p, n + d)?;
            for (k, m) in basis.iter().enumerate() {
                let r = modulus.reduce(m)?;
                let mut row = FpVector::zeros(p, n + d)?;
                for (i, c) in r.nonzero() {
                    row.set(i, c);
                }
                row.set(n + k, 1);
                solver.insert(row)?;
            }
            self.layers.insert(
                w,
                Layer {
                    dim: d,
                    solver,
                    basis,
                },
            );
        }
        Ok(&self.layers[&w])
    }

    /// Coordinates of `v` in layer `w`, for `v` in `I^w`.
    fn coords(&mut self, w: usize, v: &FpVector) -> Result<FpVector> {
        let n = self.alg.dim();
        let p = self.alg.p();
        let r = self.alg.radical_power(w + 1).reduce(v)?;
        let layer = self.layer(w)?;
        let d = layer.dim;
        let mut row = FpVector::zeros(p, n + d)?;
        for (i, c) in r.nonzero() {
            row.set(i, c);
        }
        let red = layer.solver.reduce(&row)?;
        let tail: Vec<usize> = (n..n + d).collect();
        if red
            .select(&(0..n).collect::<Vec<_>>())
            .first_nonzero()
            .is_some()
        {
            return Err(verification("kernel size", format!("vector outside I^{w}")));
        }
        Ok(red.select(&tail).neg())
    }

    fn element(&mut self, w: usize, coords: &FpVector) -> Result<FpVector> {
        let (p, n) = (self.alg.p(), self.alg.dim());
        let layer = self.layer(w)?;
        let mut v = FpVector::zeros(p, n)?;
        for (k, c) in coords.nonzero() {
            v.add_scaled(&layer.basis[k], c);
        }
        Ok(v)
    }

    fn square_tables(&mut self, w: usize) -> Result<()> {
        if self.squares.contains_key(&w) {
            return Ok(());
        }
        let basis = self.layer(w)?.basis.clone();
        let d = basis.len();
        let mut sq = Vec::with_capacity(d);
        let mut sym = Vec::with_capacity(d);
        for k in 0..d {
            let v = self.alg.mul_vectors(&basis[k], &basis[k]);
            sq.push(self.coords(2 * w, &v)?);
            let mut row = Vec::with_capacity(d);
            for l in 0..d {
                if l <= k {
                    row.push(FpVector::zeros(2, 0)?);
                    continue;
                }
                let mut v = self.alg.mul_vectors(&basis[k], &basis[l]);
                v.add_scaled(&self.alg.mul_vectors(&basis[l], &basis[k]), 1);
                row.push(self.coords(2 * w, &v)?);
            }
            sym.push(row);
        }
        self.squares.insert(w, (sq, sym));
        Ok(())
    }

    fn square(&self, w: usize, c: &FpVector) -> FpVector {
        let (sq, sym) = &self.squares[&w];
        let ones: Vec<usize> = c.nonzero().map(|(k, _)| k).collect();
        let mut out = sq.first().map_or_else(
            || FpVector::zeros(2, 0).expect("prime 2"),
            |v| FpVector::zeros(2, v.len()).expect("prime 2"),
        );
        for (a, &k) in ones.iter().enumerate() {
            out.add_scaled(&sq[k], 1);
            for &l in &ones[a + 1..] {
                out.add_scaled(&sym[k][l], 1);
            }
        }
        out
    }

    /// Kernel sizes for `s = 1..=s_max` at layer `i`, or `None` past the cap.
    pub fn layer_counts(&mut self, i: usize, s_max: u32) -> Result<Option<Vec<u64>>> {
        let p = self.alg.p();
        let d = self.layer(i)?.dim;
        let total = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if total > self.cap {
            return Ok(None);
        }
        let mut counts = vec![0u64; s_max as usize];
        if p == 2 {
            let mut w = i;
            for _ in 0..s_max {
                self.layer(2 * w)?;
                self.square_tables(w)?;
                w *= 2;
            }
            let units: Vec<FpVector> = (0..d)
                .map(|k| FpVector::unit(2, d, k))
                .collect::<std::result::Result<_, _>>()?;
            for c in combinations(2, d, &units) {
                let mut y = c;
                let mut w = i;
                for count in counts.iter_mut() {
                    y = self.square(w, &y);
                    w *= 2;
                    if y.is_zero() {
                        *count += 1;
                    }
                }
            }
        } else {
            let basis = self.layer(i)?.basis.clone();
            for x in combinations(p, self.alg.dim(), &basis) {
                let mut y = x;
                let mut e = i;
                for count in counts.iter_mut() {
                    y = self.alg.pow_vector(&y, p as u64);
                    e *= p as usize;
                    if self.alg.radical_power(e + 1).contains(&y)? {
                        *count += 1;
                    }
                }
            }
        }
        Ok(Some(counts))
    }

    /// Number of `x + I^{i+1}` in `I^i/I^{i+1}` with `x^{p^s}` in `I^{ip^s+1}`.
    pub fn kernel_size(&mut self, i: usize, s: u32) -> Result<Option<u64>> {
        if s == 0 {
            return Ok(Some(1));
        }
        Ok(self.layer_counts(i, s)?.map(|c| c[s as usize - 1]))
    }

    /// The same count by powering every combination in the algebra; an
    /// independent check of the table method.
    pub fn kernel_size_dense(&mut self, i: usize, s: u32) -> Result<Option<u64>> {
        let p = self.alg.p();
        let basis = self.layer(i)?.basis.clone();
        let total = (p as u64)
            .checked_pow(basis.len() as u32)
            .unwrap_or(u64::MAX);
        if total > self.cap {
            return Ok(None);
        }
        let e = p.pow(s) as u64;
        let target = self.alg.radical_power(i * e as usize + 1);
        let mut count = 0;
        for x in combinations(p, self.alg.dim(), &basis) {
            if target.contains(&self.alg.pow_vector(&x, e))? {
                count += 1;
            }
        }
        Ok(Some(count))
    }

    /// Layer coordinates of a vector of `I^w`, exposed for tests.
    pub fn layer_coordinates(&mut self, w: usize, v: &FpVector) -> Result<FpVector> {
        self.coords(w, v)
    }

    pub fn layer_element(&mut self, w: usize, coords: &FpVector) -> Result<FpVector> {
        self.element(w, coords)
    }
}
