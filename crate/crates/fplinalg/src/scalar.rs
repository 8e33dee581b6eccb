use std::fmt;

use crate::{LinalgError, Result};

/// Primes are limited to `u8` range so residues fit a byte.
pub fn is_prime(p: u32) -> bool {
    if !(2..=255).contains(&p) {
        return false;
    }
    (2..p)
        .take_while(|d| d * d <= p)
        .all(|d| !p.is_multiple_of(d))
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(LinalgError::NotPrime(p))
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

// field mismatch makes the binary operations fallible, so they are not the std::ops traits
#[allow(clippy::should_implement_trait)]
impl FpScalar {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            value: value.rem_euclid(p as i64) as u32,
            p,
        })
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(0, p)
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::new(1, p)
    }

    pub(crate) fn from_residue(value: u32, p: u32) -> Self {
        debug_assert!(value < p);
        Self { value, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<()> {
        if self.p != other.p {
            return Err(LinalgError::PrimeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        Ok(())
    }

    pub fn add(self, other: Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::from_residue(
            (self.value + other.value) % self.p,
            self.p,
        ))
    }

    pub fn sub(self, other: Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::from_residue(
            (self.value + self.p - other.value) % self.p,
            self.p,
        ))
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::from_residue(
            self.value * other.value % self.p,
            self.p,
        ))
    }

    pub fn neg(self) -> Self {
        Self::from_residue((self.p - self.value) % self.p, self.p)
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(LinalgError::DivisionByZero(self.p));
        }
        Ok(Self::from_residue(inv_mod(self.value, self.p), self.p))
    }

    pub fn pow(self, e: u32) -> Self {
        Self::from_residue(pow_mod(self.value, e, self.p), self.p)
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_cap() {
        let small: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(251));
        assert!(!is_prime(257));
    }

    #[test]
    fn field_arithmetic() {
        let a = FpScalar::new(-1, 7).unwrap();
        assert_eq!(a.value(), 6);
        let b = FpScalar::new(3, 7).unwrap();
        assert_eq!(a.mul(b).unwrap().value(), 4);
        assert_eq!(b.inv().unwrap().mul(b).unwrap().value(), 1);
        assert_eq!(b.pow(6).value(), 1);
        assert!(FpScalar::zero(7).unwrap().inv().is_err());
        assert!(a.add(FpScalar::one(5).unwrap()).is_err());
    }
}
