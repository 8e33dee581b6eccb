use std::fmt;

use crate::scalar::{check_prime, inv_mod};
use crate::{FpScalar, LinalgError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Storage {
    /// `F_2`: bit `i` of word `i / 64`. Bits past `len` are always zero.
    Bits(Vec<u64>),
    /// Odd primes: one residue per byte.
    Bytes(Vec<u8>),
}

/// A vector over `F_p` of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    len: usize,
    data: Storage,
}

impl FpVector {
    pub fn zeros(p: u32, len: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::zeros_unchecked(p, len))
    }

    pub(crate) fn zeros_unchecked(p: u32, len: usize) -> Self {
        let data = if p == 2 {
            Storage::Bits(vec![0; len.div_ceil(64)])
        } else {
            Storage::Bytes(vec![0; len])
        };
        Self { p, len, data }
    }

    /// Builds a vector from integer entries, reducing each modulo `p`.
    pub fn from_entries(p: u32, entries: &[i64]) -> Result<Self> {
        let mut v = Self::zeros(p, entries.len())?;
        for (i, &e) in entries.iter().enumerate() {
            v.set(i, e.rem_euclid(p as i64) as u32);
        }
        Ok(v)
    }

    /// The `i`-th standard basis vector.
    pub fn unit(p: u32, len: usize, i: usize) -> Result<Self> {
        let mut v = Self::zeros(p, len)?;
        v.set(i, 1);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len);
        match &self.data {
            Storage::Bits(w) => ((w[i >> 6] >> (i & 63)) & 1) as u32,
            Storage::Bytes(b) => b[i] as u32,
        }
    }

    pub fn scalar(&self, i: usize) -> FpScalar {
        FpScalar::from_residue(self.get(i), self.p)
    }

    /// Sets entry `i` to `value mod p`.
    #[inline]
    pub fn set(&mut self, i: usize, value: u32) {
        debug_assert!(i < self.len);
        let value = value % self.p;
        match &mut self.data {
            Storage::Bits(w) => {
                let mask = 1u64 << (i & 63);
                if value == 1 {
                    w[i >> 6] |= mask;
                } else {
                    w[i >> 6] &= !mask;
                }
            }
            Storage::Bytes(b) => b[i] = value as u8,
        }
    }

    /// Adds `value` to entry `i`.
    #[inline]
    pub fn add_at(&mut self, i: usize, value: u32) {
        debug_assert!(i < self.len);
        match &mut self.data {
            Storage::Bits(w) => w[i >> 6] ^= ((value & 1) as u64) << (i & 63),
            Storage::Bytes(b) => b[i] = ((b[i] as u32 + value % self.p) % self.p) as u8,
        }
    }

    pub fn entries(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Bits(w) => w.iter().all(|&x| x == 0),
            Storage::Bytes(b) => b.iter().all(|&x| x == 0),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        match &self.data {
            Storage::Bits(w) => w
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .map(|(k, &x)| k * 64 + x.trailing_zeros() as usize),
            Storage::Bytes(b) => b.iter().position(|&x| x != 0),
        }
    }

    pub fn weight(&self) -> usize {
        match &self.data {
            Storage::Bits(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Storage::Bytes(b) => b.iter().filter(|&&x| x != 0).count(),
        }
    }

    /// Iterates over `(index, residue)` for the nonzero entries, in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        let bits = match &self.data {
            Storage::Bits(w) => Some(w.iter().enumerate().flat_map(|(k, &word)| {
                let mut word = word;
                std::iter::from_fn(move || {
                    if word == 0 {
                        return None;
                    }
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some((k * 64 + t, 1))
                })
            })),
            Storage::Bytes(_) => None,
        };
        let bytes = match &self.data {
            Storage::Bytes(b) => Some(
                b.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| (i, x as u32)),
            ),
            Storage::Bits(_) => None,
        };
        bits.into_iter()
            .flatten()
            .chain(bytes.into_iter().flatten())
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(LinalgError::PrimeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        if self.len != other.len {
            return Err(LinalgError::DimensionMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    /// `self += c * other`. Panics if the shapes differ; see [`Self::try_add_scaled`].
    pub fn add_scaled(&mut self, other: &Self, c: u32) {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(self.len, other.len, "length mismatch");
        let c = c % self.p;
        if c == 0 {
            return;
        }
        match (&mut self.data, &other.data) {
            (Storage::Bits(a), Storage::Bits(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= *y;
                }
            }
            (Storage::Bytes(a), Storage::Bytes(b)) => {
                let p = self.p;
                for (x, &y) in a.iter_mut().zip(b) {
                    if y != 0 {
                        *x = ((*x as u32 + c * y as u32) % p) as u8;
                    }
                }
            }
            _ => unreachable!("storage follows the prime"),
        }
    }

    pub fn try_add_scaled(&mut self, other: &Self, c: u32) -> Result<()> {
        self.check_compatible(other)?;
        self.add_scaled(other, c);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.try_add_scaled(other, 1)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.try_add_scaled(other, self.p - 1)?;
        Ok(out)
    }

    pub fn scale(&mut self, c: u32) {
        let c = c % self.p;
        match &mut self.data {
            Storage::Bits(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Storage::Bytes(b) => {
                let p = self.p;
                b.iter_mut().for_each(|x| *x = ((*x as u32 * c) % p) as u8);
            }
        }
    }

    pub fn scaled(&self, c: u32) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(self.p - 1)
    }

    /// Scales so that the first nonzero entry is 1; returns that index.
    pub(crate) fn normalize(&mut self) -> Option<usize> {
        let lead = self.first_nonzero()?;
        let c = self.get(lead);
        if c != 1 {
            self.scale(inv_mod(c, self.p));
        }
        Some(lead)
    }

    /// Sum of all entries.
    pub fn entry_sum(&self) -> u32 {
        match &self.data {
            Storage::Bits(w) => w.iter().map(|x| x.count_ones()).sum::<u32>() % 2,
            Storage::Bytes(b) => (b.iter().map(|&x| x as u64).sum::<u64>() % self.p as u64) as u32,
        }
    }

    /// Entries at the given positions, in order.
    pub fn select(&self, positions: &[usize]) -> Self {
        let mut out = Self::zeros_unchecked(self.p, positions.len());
        for (k, &i) in positions.iter().enumerate() {
            out.set(k, self.get(i));
        }
        out
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.p, self.entries())
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_and_byte_storage_agree_on_basics() {
        let v = FpVector::from_entries(2, &[1, 0, 1, 1, 0]).unwrap();
        assert_eq!(v.entries(), vec![1, 0, 1, 1, 0]);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.first_nonzero(), Some(0));
        let w = FpVector::from_entries(3, &[0, -1, 4]).unwrap();
        assert_eq!(w.entries(), vec![0, 2, 1]);
        assert_eq!(w.nonzero().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn long_bit_vectors_cross_word_boundaries() {
        let mut v = FpVector::zeros(2, 130).unwrap();
        v.set(129, 1);
        v.set(64, 1);
        assert_eq!(v.first_nonzero(), Some(64));
        assert_eq!(v.nonzero().map(|x| x.0).collect::<Vec<_>>(), vec![64, 129]);
        let mut w = v.clone();
        w.add_scaled(&v, 1);
        assert!(w.is_zero());
    }

    #[test]
    fn shape_errors() {
        let a = FpVector::zeros(2, 3).unwrap();
        let b = FpVector::zeros(2, 4).unwrap();
        let c = FpVector::zeros(3, 3).unwrap();
        assert!(matches!(
            a.add(&b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(matches!(a.add(&c), Err(LinalgError::PrimeMismatch { .. })));
        assert!(FpVector::zeros(4, 3).is_err());
    }

    #[test]
    fn normalize_makes_leading_one() {
        let mut v = FpVector::from_entries(5, &[0, 3, 1]).unwrap();
        assert_eq!(v.normalize(), Some(1));
        assert_eq!(v.entries(), vec![0, 1, 2]);
    }
}
