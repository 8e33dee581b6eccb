use std::fmt;

use serde::Serialize;

use crate::pgroup::subgroup::log_p;
use crate::pgroup::{Group, Subgroup};
use crate::{Error, Result};

/// Isomorphism type of a finite abelian p-group, recorded as the profile
/// `a_k = log_p |{x : x^{p^k} = 1}|` for `k = 0, 1, ...` until it stabilizes.
/// Serializes as its display string, e.g. `"C8 x C8 x C4"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "String")]
pub struct AbelianType {
    pub p: u32,
    pub profile: Vec<u32>,
}

impl AbelianType {
    pub fn trivial(p: u32) -> Self {
        Self {
            p,
            profile: vec![0],
        }
    }

    /// Type of `C_{p^{e_1}} x C_{p^{e_2}} x ...`.
    pub fn from_cyclic_exponents(p: u32, exponents: &[u32]) -> Self {
        let top = exponents.iter().copied().max().unwrap_or(0);
        let profile = (0..=top)
            .map(|k| exponents.iter().map(|&e| e.min(k)).sum())
            .collect();
        Self { p, profile }
    }

    /// Exponents of the cyclic factors, largest first.
    pub fn cyclic_exponents(&self) -> Vec<u32> {
        // factors of order >= p^k number a_k - a_{k-1}
        let mut out = Vec::new();
        for k in (1..self.profile.len()).rev() {
            let at_least_k = self.profile[k] - self.profile[k - 1];
            let at_least_next = if k + 1 < self.profile.len() {
                self.profile[k + 1] - self.profile[k]
            } else {
                0
            };
            for _ in 0..(at_least_k - at_least_next) {
                out.push(k as u32);
            }
        }
        out
    }

    pub fn log_order(&self) -> u32 {
        *self.profile.last().expect("profile starts at 0")
    }

    pub fn rank(&self) -> u32 {
        self.profile.get(1).copied().unwrap_or(0)
    }

    pub fn exponent_log(&self) -> u32 {
        (self.profile.len() - 1) as u32
    }

    fn from_counts(p: u32, mut count: impl FnMut(u64) -> usize, total: usize) -> Self {
        let mut profile = Vec::new();
        let mut k = 0u32;
        loop {
            let c = count((p as u64).pow(k));
            profile.push(log_p(c, p));
            if c == total {
                return Self { p, profile };
            }
            k += 1;
        }
    }
}

impl From<AbelianType> for String {
    fn from(t: AbelianType) -> String {
        t.to_string()
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = self.cyclic_exponents();
        if exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = exps
            .iter()
            .map(|&e| format!("C{}", (self.p as u64).pow(e)))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Group {
    /// Type of an abelian subgroup.
    pub fn abelian_type(&self, u: &Subgroup) -> Result<AbelianType> {
        self.check_parent(u)?;
        let gens = self.subgroup_generators(u);
        if gens
            .iter()
            .any(|&x| gens.iter().any(|&y| self.mul(x, y) != self.mul(y, x)))
        {
            return Err(Error::NotAbelian);
        }
        Ok(AbelianType::from_counts(
            self.p(),
            |e| u.members().iter().filter(|&&x| self.pow(x, e) == 0).count(),
            u.order(),
        ))
    }

    /// Type of the section `U/V`, which must be abelian with `V` normal in `U`.
    pub fn abelian_section_type(&self, u: &Subgroup, v: &Subgroup) -> Result<AbelianType> {
        self.check_parent(u)?;
        self.check_parent(v)?;
        if !v.is_subset_of(u) {
            return Err(Error::NotSubgroup("V is not contained in U".into()));
        }
        let gu = self.subgroup_generators(u);
        let gv = self.subgroup_generators(v);
        if gv
            .iter()
            .any(|&y| gu.iter().any(|&t| !v.contains(self.conjugate(y, t))))
        {
            return Err(Error::NotNormal);
        }
        if gu
            .iter()
            .any(|&x| gu.iter().any(|&y| !v.contains(self.commutator(x, y))))
        {
            return Err(Error::NotAbelian);
        }
        let index = u.order() / v.order();
        Ok(AbelianType::from_counts(
            self.p(),
            |e| {
                u.members()
                    .iter()
                    .filter(|&&x| v.contains(self.pow(x, e)))
                    .count()
                    / v.order()
            },
            index,
        ))
    }

    /// Type of the whole group, which must be abelian.
    pub fn abelian_type_of_group(&self) -> Result<AbelianType> {
        self.abelian_type(&self.whole())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    #[test]
    fn c4_times_c2_profile() {
        let g = build(&Family::Abelian {
            p: 2,
            exponents: vec![2, 1],
        })
        .unwrap();
        let t = g.abelian_type_of_group().unwrap();
        assert_eq!(t.profile, vec![0, 2, 3]);
        assert_eq!(t, AbelianType::from_cyclic_exponents(2, &[2, 1]));
        assert_eq!(t.cyclic_exponents(), vec![2, 1]);
        assert_eq!(t.to_string(), "C4 x C2");
    }

    #[test]
    fn nonabelian_input_is_rejected() {
        let g = build(&Family::Dihedral { order: 8 }).unwrap();
        assert!(matches!(g.abelian_type_of_group(), Err(Error::NotAbelian)));
        let t = g
            .abelian_section_type(&g.whole(), &g.derived_subgroup())
            .unwrap();
        assert_eq!(t.to_string(), "C2 x C2");
    }

    #[test]
    fn trivial_type() {
        let t = AbelianType::trivial(3);
        assert_eq!(t.to_string(), "1");
        assert_eq!(t.cyclic_exponents(), Vec::<u32>::new());
        assert_eq!(AbelianType::from_cyclic_exponents(3, &[]), t);
    }
}
