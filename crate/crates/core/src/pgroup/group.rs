use std::sync::atomic::{AtomicU64, Ordering};

use crate::pgroup::PcPresentation;
use crate::{Error, Result};

/// Default largest group order handled by exhaustive methods.
pub const DEFAULT_ORDER_CAP: usize = 1 << 10;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// A finite p-group with its full multiplication table.
///
/// Elements are the indices `0..order`; index 0 is the identity. Groups built
/// from a pc presentation index elements by the lexicographic rank of their
/// exponent vectors.
#[derive(Clone, Debug)]
pub struct Group {
    id: u64,
    p: u32,
    log_order: u32,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<u32>,
    presentation: Option<PcPresentation>,
    name: String,
}

impl Group {
    pub fn from_presentation(pres: PcPresentation) -> Result<Self> {
        Self::from_presentation_with_cap(pres, DEFAULT_ORDER_CAP)
    }

    pub fn from_presentation_with_cap(pres: PcPresentation, cap: usize) -> Result<Self> {
        let p = pres.p();
        let gens = pres.gens();
        let order = (p as u128).pow(gens as u32);
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                what: "group order",
                size: order,
                cap: cap as u128,
            });
        }
        if let Some(w) = pres.consistency_witness() {
            return Err(Error::Inconsistent(w));
        }
        let order = order as usize;

        // Right multiplication by each pc generator, by collection.
        let mut rmul = vec![0u32; order * gens];
        for x in 0..order {
            let ex = pres.exponents_of(x);
            for k in 0..gens {
                rmul[x * gens + k] = pres.index_of(&pres.multiply(&ex, &pres.generator(k))) as u32;
            }
        }
        // x * y = (x * y') * g_k where y' drops one from the last nonzero exponent of y.
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            table[x * order] = x as u32;
        }
        for y in 1..order {
            let ey = pres.exponents_of(y);
            let k = ey.iter().rposition(|&e| e != 0).expect("nonidentity");
            let y_prev = y - (p as usize).pow((gens - 1 - k) as u32);
            for x in 0..order {
                let xy_prev = table[x * order + y_prev] as usize;
                table[x * order + y] = rmul[xy_prev * gens + k];
            }
        }
        let generators = (0..gens)
            .map(|k| pres.index_of(&pres.generator(k)) as u32)
            .collect();
        let mut g = Self::assemble(p, table, generators, Some(pres))?;
        g.name = "pc group".into();
        Ok(g)
    }

    /// Wraps a multiplication table whose identity is index 0. The table is
    /// validated: identity, inverses, and associativity on generator triples.
    pub fn from_table(p: u32, table: Vec<u32>) -> Result<Self> {
        let order = (table.len() as f64).sqrt().round() as usize;
        if order * order != table.len() || order == 0 {
            return Err(Error::InvalidParameters("table is not square".into()));
        }
        let mut g = Self::assemble(p, table, Vec::new(), None)?;
        g.generators = g.greedy_generators(&(0..order as u32).collect::<Vec<_>>());
        g.check_associative()?;
        Ok(g)
    }

    fn assemble(
        p: u32,
        table: Vec<u32>,
        generators: Vec<u32>,
        presentation: Option<PcPresentation>,
    ) -> Result<Self> {
        let order = (table.len() as f64).sqrt().round() as usize;
        let mut log_order = 0;
        let mut n = 1usize;
        while n < order {
            n *= p as usize;
            log_order += 1;
        }
        if n != order {
            return Err(Error::InvalidParameters(format!(
                "order {order} is not a power of {p}"
            )));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::InvalidParameters(
                    "index 0 is not the identity".into(),
                ));
            }
        }
        let mut inverses = vec![u32::MAX; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            if let Some(y) = row.iter().position(|&z| z == 0) {
                inverses[x] = y as u32;
            } else {
                return Err(Error::InvalidParameters(format!(
                    "element {x} has no inverse"
                )));
            }
        }
        Ok(Self {
            id: fresh_id(),
            p,
            log_order,
            order,
            table,
            inverses,
            generators,
            presentation,
            name: String::new(),
        })
    }

    fn check_associative(&self) -> Result<()> {
        for x in 0..self.order as u32 {
            for y in 0..self.order as u32 {
                let xy = self.mul(x, y);
                for &g in &self.generators {
                    if self.mul(xy, g) != self.mul(x, self.mul(y, g)) {
                        return Err(Error::InvalidParameters(format!(
                            "table is not associative at ({x}, {y}, {g})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `log_p |G|`.
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn presentation(&self) -> Option<&PcPresentation> {
        self.presentation.as_ref()
    }

    /// A generating set: the pc generators, or a greedy set for table groups.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inverses[x as usize]
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let mut acc = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `[g, h] = g^{-1} h^{-1} g h`.
    pub fn commutator(&self, g: u32, h: u32) -> u32 {
        self.mul(self.inv(self.mul(h, g)), self.mul(g, h))
    }

    /// `g^h = h^{-1} g h`.
    pub fn conjugate(&self, g: u32, h: u32) -> u32 {
        self.mul(self.inv(h), self.mul(g, h))
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let mut n = 1;
        let mut acc = x;
        while acc != 0 {
            acc = self.mul(acc, x);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        self.elements()
            .map(|x| self.element_order(x))
            .max()
            .unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .all(|&x| g.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Exponent vector of an element of a pc group.
    pub fn exponents(&self, x: u32) -> Option<Vec<u32>> {
        self.presentation
            .as_ref()
            .map(|pc| pc.exponents_of(x as usize))
    }

    /// Index of a normal form in a pc group.
    pub fn element(&self, exponents: &[u32]) -> Result<u32> {
        let pc = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::InvalidParameters("group has no pc presentation".into()))?;
        if exponents.len() != pc.gens() || exponents.iter().any(|&e| e >= self.p) {
            return Err(Error::InvalidParameters(format!(
                "{exponents:?} is not a normal form"
            )));
        }
        Ok(pc.index_of(exponents) as u32)
    }

    /// Evaluates a word in the pc generators; negative exponents allowed.
    pub fn word(&self, word: &[(usize, i64)]) -> Result<u32> {
        let gens = self.generators.len();
        let mut acc = 0;
        for &(i, k) in word {
            if i >= gens {
                return Err(Error::InvalidGenerator { index: i, gens });
            }
            let g = if k < 0 {
                self.inv(self.generators[i])
            } else {
                self.generators[i]
            };
            acc = self.mul(acc, self.pow(g, k.unsigned_abs()));
        }
        Ok(acc)
    }

    pub(crate) fn greedy_generators(&self, candidates: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut mask = vec![false; self.order];
        mask[0] = true;
        for &c in candidates {
            if !mask[c as usize] {
                gens.push(c);
                let members = self.close(&gens);
                mask.iter_mut().for_each(|m| *m = false);
                for m in members {
                    mask[m as usize] = true;
                }
            }
        }
        gens
    }

    /// Members of `<gens>`, sorted.
    pub(crate) fn close(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Verifies the multiplication table against fresh collections for the
    /// given pairs. Returns the first disagreeing pair.
    pub fn check_against_collection(&self, pairs: &[(u32, u32)]) -> Option<(u32, u32)> {
        let pc = self.presentation.as_ref()?;
        pairs.iter().copied().find(|&(x, y)| {
            let fresh = pc.multiply(&pc.exponents_of(x as usize), &pc.exponents_of(y as usize));
            pc.index_of(&fresh) as u32 != self.mul(x, y)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> Group {
        let mut pc = PcPresentation::new(2, 3).unwrap();
        pc.set_power(0, &[0, 0, 1]).unwrap();
        pc.set_conjugate(1, 0, &[0, 1, 1]).unwrap();
        Group::from_presentation(pc).unwrap()
    }

    #[test]
    fn table_group_axioms() {
        let g = d8();
        assert_eq!(g.order(), 8);
        assert_eq!(g.log_order(), 3);
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
            assert_eq!(g.commutator(x, 0), 0);
            for y in g.elements() {
                let c = g.commutator(x, y);
                assert_eq!(c, g.mul(g.inv(g.mul(y, x)), g.mul(x, y)));
            }
        }
        assert_eq!(g.exponent(), 4);
        assert!(!g.is_abelian());
    }

    #[test]
    fn cap_is_enforced() {
        let pc = PcPresentation::new(2, 11).unwrap();
        assert!(matches!(
            Group::from_presentation(pc),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn inconsistent_presentation_is_refused() {
        let mut pc = PcPresentation::new(2, 3).unwrap();
        pc.set_power(0, &[0, 0, 1]).unwrap();
        pc.set_conjugate(1, 0, &[0, 0, 1]).unwrap();
        assert!(matches!(
            Group::from_presentation(pc),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn table_roundtrip_through_from_table() {
        let g = d8();
        let h = Group::from_table(2, g.table.clone()).unwrap();
        assert_eq!(h.order(), 8);
        assert!(h.generators().len() <= 3);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let klein = vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0];
        assert!(Group::from_table(2, klein).is_ok());
        // (1 * 1) * 2 = 2 but 1 * (1 * 2) = 1.
        let bad = vec![0, 1, 2, 3, 1, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0];
        assert!(Group::from_table(2, bad).is_err());
    }
}
