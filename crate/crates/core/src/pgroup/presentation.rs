use std::fmt;

use crate::{Error, Result};

/// A refined power-commutator presentation of a group of order `p^L`.
///
/// Generators `g_1, ..., g_L` all have relative order `p`. Relations are
/// stored as normal-form exponent vectors: `g_i^p` must only involve
/// generators after `g_i`, and the conjugate `g_j^{g_i}` (for `i < j`) only
/// generators from `g_j` on. Indices are 0-based in the API and 1-based in
/// the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    p: u32,
    gens: usize,
    powers: Vec<Vec<u32>>,
    /// `conjugates[j][i]` is `g_j^{g_i}` for `i < j`.
    conjugates: Vec<Vec<Vec<u32>>>,
}

/// The overlap on which two collection orders disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyWitness {
    pub description: String,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl fmt::Display for ConsistencyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} collects to {:?} one way and {:?} the other",
            self.description, self.left, self.right
        )
    }
}

impl PcPresentation {
    /// Presentation of the elementary abelian group of rank `gens`; relations
    /// are then overwritten with [`Self::set_power`] and [`Self::set_conjugate`].
    pub fn new(p: u32, gens: usize) -> Result<Self> {
        if !fplinalg::is_prime(p) {
            return Err(Error::InvalidParameters(format!(
                "{p} is not a supported prime"
            )));
        }
        let unit = |j: usize| {
            let mut e = vec![0; gens];
            e[j] = 1;
            e
        };
        Ok(Self {
            p,
            gens,
            powers: vec![vec![0; gens]; gens],
            conjugates: (0..gens).map(|j| vec![unit(j); j]).collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    fn check_word(&self, word: &[u32]) -> Result<()> {
        if word.len() != self.gens {
            return Err(Error::InvalidParameters(format!(
                "relation has {} entries, expected {}",
                word.len(),
                self.gens
            )));
        }
        if word.iter().any(|&e| e >= self.p) {
            return Err(Error::InvalidParameters(format!(
                "exponents must lie in 0..{}",
                self.p
            )));
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.gens {
            return Err(Error::InvalidGenerator {
                index,
                gens: self.gens,
            });
        }
        Ok(())
    }

    /// Sets the normal form of `g_i^p`.
    pub fn set_power(&mut self, i: usize, word: &[u32]) -> Result<()> {
        self.check_index(i)?;
        self.check_word(word)?;
        if word[..=i].iter().any(|&e| e != 0) {
            return Err(Error::BadRelation {
                relation: format!("pow {}", i + 1),
            });
        }
        self.powers[i] = word.to_vec();
        Ok(())
    }

    /// Sets the normal form of `g_j^{g_i} = g_i^{-1} g_j g_i` for `i < j`.
    pub fn set_conjugate(&mut self, j: usize, i: usize, word: &[u32]) -> Result<()> {
        self.check_index(j)?;
        self.check_index(i)?;
        self.check_word(word)?;
        if i >= j || word[..j].iter().any(|&e| e != 0) {
            return Err(Error::BadRelation {
                relation: format!("conj {} {}", j + 1, i + 1),
            });
        }
        self.conjugates[j][i] = word.to_vec();
        Ok(())
    }

    pub fn power(&self, i: usize) -> &[u32] {
        &self.powers[i]
    }

    pub fn conjugate(&self, j: usize, i: usize) -> &[u32] {
        &self.conjugates[j][i]
    }

    pub fn identity(&self) -> Vec<u32> {
        vec![0; self.gens]
    }

    pub fn generator(&self, i: usize) -> Vec<u32> {
        let mut e = self.identity();
        e[i] = 1;
        e
    }

    /// `e <- e * g_j` by collection from the left.
    fn mul_gen(&self, e: &mut [u32], j: usize) {
        let tail: Vec<u32> = e[j + 1..].to_vec();
        e[j + 1..].iter_mut().for_each(|x| *x = 0);
        e[j] += 1;
        if e[j] == self.p {
            e[j] = 0;
            self.mul_word(e, &self.powers[j]);
        }
        // tail * g_j = g_j * tail^{g_j}
        for (off, &t) in tail.iter().enumerate() {
            let k = j + 1 + off;
            for _ in 0..t {
                self.mul_word(e, &self.conjugates[k][j]);
            }
        }
    }

    fn mul_word(&self, e: &mut [u32], word: &[u32]) {
        for (k, &c) in word.iter().enumerate() {
            for _ in 0..c {
                self.mul_gen(e, k);
            }
        }
    }

    /// Product of two normal forms.
    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let mut e = x.to_vec();
        self.mul_word(&mut e, y);
        e
    }

    fn order_of(&self, x: &[u32]) -> u64 {
        let mut acc = x.to_vec();
        let mut n = 1;
        while acc.iter().any(|&e| e != 0) {
            acc = self.multiply(&acc, x);
            n += 1;
        }
        n
    }

    pub fn inverse(&self, x: &[u32]) -> Vec<u32> {
        let n = self.order_of(x);
        self.pow(x, n - 1)
    }

    pub fn pow(&self, x: &[u32], k: u64) -> Vec<u32> {
        let mut acc = self.identity();
        let mut base = x.to_vec();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Normal form of the word `g_{i_1}^{k_1} g_{i_2}^{k_2} ...`; negative
    /// exponents are allowed.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<Vec<u32>> {
        let mut e = self.identity();
        for &(i, k) in word {
            self.check_index(i)?;
            let g = self.generator(i);
            let base = if k < 0 { self.inverse(&g) } else { g };
            let factor = self.pow(&base, k.unsigned_abs());
            e = self.multiply(&e, &factor);
        }
        Ok(e)
    }

    /// Runs the standard overlap tests and returns the first failure.
    pub fn consistency_witness(&self) -> Option<ConsistencyWitness> {
        let p = self.p as u64;
        let g = |i| self.generator(i);
        let gpow = |i, k| self.pow(&self.generator(i), k);
        let check = |desc: String, left: Vec<u32>, right: Vec<u32>| {
            (left != right).then_some(ConsistencyWitness {
                description: desc,
                left,
                right,
            })
        };
        let n = self.gens;
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = self.multiply(&self.multiply(&g(k), &g(j)), &g(i));
                    let right = self.multiply(&g(k), &self.multiply(&g(j), &g(i)));
                    let w = check(format!("(g{} g{}) g{}", k + 1, j + 1, i + 1), left, right);
                    if w.is_some() {
                        return w;
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let left = self.multiply(&self.powers[j], &g(i));
                let right = self.multiply(&gpow(j, p - 1), &self.multiply(&g(j), &g(i)));
                if let Some(w) = check(format!("g{}^p g{}", j + 1, i + 1), left, right) {
                    return Some(w);
                }
                let left = self.multiply(&g(j), &self.powers[i]);
                let right = self.multiply(&self.multiply(&g(j), &g(i)), &gpow(i, p - 1));
                if let Some(w) = check(format!("g{} g{}^p", j + 1, i + 1), left, right) {
                    return Some(w);
                }
            }
        }
        for i in 0..n {
            let left = self.multiply(&self.powers[i], &g(i));
            let right = self.multiply(&g(i), &self.powers[i]);
            if let Some(w) = check(format!("g{}^(p+1)", i + 1), left, right) {
                return Some(w);
            }
        }
        None
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency_witness().is_none()
    }

    /// Associativity on every `(x, y, g)` with `g` a generator, which implies
    /// associativity on all triples. Cost is `|G|^2 L` collections.
    pub fn exhaustive_witness(&self) -> Option<ConsistencyWitness> {
        let elements = self.all_normal_forms();
        for x in &elements {
            for y in &elements {
                let xy = self.multiply(x, y);
                for i in 0..self.gens {
                    let gi = self.generator(i);
                    let left = self.multiply(&xy, &gi);
                    let right = self.multiply(x, &self.multiply(y, &gi));
                    if left != right {
                        return Some(ConsistencyWitness {
                            description: format!("({x:?} {y:?}) g{}", i + 1),
                            left,
                            right,
                        });
                    }
                }
            }
        }
        None
    }

    /// All `p^L` normal forms in lexicographic order.
    pub fn all_normal_forms(&self) -> Vec<Vec<u32>> {
        let total = (self.p as usize).pow(self.gens as u32);
        (0..total).map(|idx| self.exponents_of(idx)).collect()
    }

    /// Lexicographic rank of a normal form: the first exponent is most significant.
    pub fn index_of(&self, e: &[u32]) -> usize {
        e.iter()
            .fold(0, |acc, &x| acc * self.p as usize + x as usize)
    }

    pub fn exponents_of(&self, mut idx: usize) -> Vec<u32> {
        let mut e = vec![0; self.gens];
        for slot in e.iter_mut().rev() {
            *slot = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        e
    }

    /// Serializes in the `p` / `gens` / `pow` / `conj` text format, listing
    /// only nontrivial relations.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {}\ngens {}\n", self.p, self.gens);
        let join = |w: &[u32]| w.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        for i in 0..self.gens {
            if self.powers[i].iter().any(|&e| e != 0) {
                out.push_str(&format!("pow {}: {}\n", i + 1, join(&self.powers[i])));
            }
        }
        for j in 0..self.gens {
            for i in 0..j {
                if self.conjugates[j][i] != self.generator(j) {
                    out.push_str(&format!(
                        "conj {} {}: {}\n",
                        j + 1,
                        i + 1,
                        join(&self.conjugates[j][i])
                    ));
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut p = None;
        let mut gens = None;
        let mut pres: Option<PcPresentation> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line, message };
            let (head, rest) = content
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(format!("cannot parse `{content}`")))?;
            let rest = rest.trim();
            match head {
                "p" => {
                    if p.is_some() {
                        return Err(err("duplicate `p` line".into()));
                    }
                    p = Some(rest.parse::<u32>().map_err(|e| err(e.to_string()))?);
                }
                "gens" => {
                    if gens.is_some() {
                        return Err(err("duplicate `gens` line".into()));
                    }
                    gens = Some(rest.parse::<usize>().map_err(|e| err(e.to_string()))?);
                }
                "pow" | "conj" => {
                    if pres.is_none() {
                        let (Some(p), Some(g)) = (p, gens) else {
                            return Err(err("`p` and `gens` must precede relations".into()));
                        };
                        pres = Some(Self::new(p, g).map_err(|e| err(e.to_string()))?);
                    }
                    let pres = pres.as_mut().expect("initialized above");
                    let (idx, word) = rest
                        .split_once(':')
                        .ok_or_else(|| err("missing `:`".into()))?;
                    let idx: Vec<usize> = idx
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|e| err(e.to_string())))
                        .collect::<Result<_>>()?;
                    let word: Vec<u32> = word
                        .split_whitespace()
                        .map(|t| t.parse::<u32>().map_err(|e| err(e.to_string())))
                        .collect::<Result<_>>()?;
                    if idx.contains(&0) {
                        return Err(err("generator indices are 1-based".into()));
                    }
                    let res = match (head, idx.as_slice()) {
                        ("pow", [i]) => pres.set_power(i - 1, &word),
                        ("conj", [j, i]) => pres.set_conjugate(j - 1, i - 1, &word),
                        _ => return Err(err(format!("wrong number of indices for `{head}`"))),
                    };
                    res.map_err(|e| err(e.to_string()))?;
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        match pres {
            Some(pres) => Ok(pres),
            None => {
                let p = p.ok_or(Error::Parse {
                    line: 0,
                    message: "missing `p` line".into(),
                })?;
                let gens = gens.ok_or(Error::Parse {
                    line: 0,
                    message: "missing `gens` line".into(),
                })?;
                Self::new(p, gens)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// D8 on pc generators (a, b, a^2).
    fn d8() -> PcPresentation {
        let mut pc = PcPresentation::new(2, 3).unwrap();
        pc.set_power(0, &[0, 0, 1]).unwrap();
        pc.set_conjugate(1, 0, &[0, 1, 1]).unwrap();
        pc
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(d8().collect(&[]).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn dihedral_relation_b_a_equals_a_cubed_b() {
        let pc = d8();
        let ba = pc.collect(&[(1, 1), (0, 1)]).unwrap();
        let a3b = pc.collect(&[(0, 3), (1, 1)]).unwrap();
        assert_eq!(ba, a3b);
        assert_eq!(pc.collect(&[(0, 4)]).unwrap(), pc.identity());
        assert_eq!(pc.collect(&[(1, 2)]).unwrap(), pc.identity());
        assert_eq!(
            pc.collect(&[(0, -1)]).unwrap(),
            pc.collect(&[(0, 3)]).unwrap()
        );
    }

    #[test]
    fn invalid_generator_rejected() {
        assert!(matches!(
            d8().collect(&[(3, 1)]),
            Err(Error::InvalidGenerator { index: 3, gens: 3 })
        ));
    }

    #[test]
    fn relation_support_is_enforced() {
        let mut pc = PcPresentation::new(2, 3).unwrap();
        assert!(pc.set_power(1, &[1, 0, 0]).is_err());
        assert!(pc.set_conjugate(1, 0, &[1, 1, 0]).is_err());
        assert!(pc.set_conjugate(0, 1, &[0, 0, 0]).is_err());
    }

    #[test]
    fn consistency_of_standard_presentations() {
        assert!(d8().is_consistent());
        let mut cyclic = PcPresentation::new(3, 3).unwrap();
        cyclic.set_power(0, &[0, 1, 0]).unwrap();
        cyclic.set_power(1, &[0, 0, 1]).unwrap();
        assert!(cyclic.is_consistent());
        assert!(cyclic.exhaustive_witness().is_none());
    }

    #[test]
    fn corrupted_conjugation_is_detected() {
        // b^a = a^2 instead of b a^2.
        let mut pc = PcPresentation::new(2, 3).unwrap();
        pc.set_power(0, &[0, 0, 1]).unwrap();
        pc.conjugates[1][0] = vec![0, 0, 1];
        assert!(pc.consistency_witness().is_some());
        assert!(pc.exhaustive_witness().is_some());
    }

    #[test]
    fn text_roundtrip() {
        let pc = d8();
        let text = pc.to_text();
        assert_eq!(text, "p 2\ngens 3\npow 1: 0 0 1\nconj 2 1: 0 1 1\n");
        assert_eq!(PcPresentation::from_text(&text).unwrap(), pc);
        let commented =
            "# D8\np 2\ngens 3  # three pc generators\n\npow 1: 0 0 1\nconj 2 1: 0 1 1\n";
        assert_eq!(PcPresentation::from_text(commented).unwrap(), pc);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = PcPresentation::from_text("p 2\ngens 2\npow 3: 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = PcPresentation::from_text("p 2\ngens 2\nfoo 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(PcPresentation::from_text("gens 2\n").is_err());
        assert!(PcPresentation::from_text("p 4\ngens 2\npow 1: 0 1\n").is_err());
    }
}
