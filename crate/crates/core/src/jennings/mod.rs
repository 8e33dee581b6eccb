//! Jennings theory: dimension subgroups from the radical filtration,
//! Jennings bases, Zassenhaus ideals and the Hertweck–Soriano ideal.

mod hs;
mod zassenhaus;

use fplinalg::{EchelonSubspace, FpVector};

use crate::algebra::{FiniteAlgebra, GroupAlgebra};
use crate::pgroup::{DimensionSeries, Group};
use crate::{verification, Result};

pub use hs::{hertweck_soriano_ideal, HertweckSorianoIdeal};
pub(crate) use zassenhaus::combinations;
pub use zassenhaus::{
    complement_of_l2, lie_power_subspace, zassenhaus_ideal, L2Complement, ZassenhausIdeal,
    DEFAULT_POWER_ENUMERATION_CAP,
};

/// `D_m = {g : g - 1 in I^m}` for `m = 1, 2, ...` up to the first trivial term.
pub fn dimension_subgroups_algebra_side(alg: &GroupAlgebra) -> Result<DimensionSeries> {
    let g = alg.group();
    let mut terms = Vec::new();
    for m in 1.. {
        let power = alg.radical_power(m);
        let mut members = Vec::new();
        for x in g.elements() {
            if power.contains(alg.embed_minus_one(x).coeffs())? {
                members.push(x);
            }
        }
        let d = g.subgroup_from_members(&members)?;
        let done = d.is_trivial();
        terms.push(d);
        if done {
            break;
        }
    }
    Ok(DimensionSeries::from_terms(terms))
}

/// A letter `g - 1` of the Jennings basis: a layer representative and its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JenningsLetter {
    pub element: u32,
    pub weight: u32,
}

/// A monomial `prod_k (g_k - 1)^{e_k}` in the letters, in letter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub weight: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// The Jennings basis of `kG` with its monomials sorted by weight, then
/// lexicographically by exponent vector.
#[derive(Clone, Debug)]
pub struct JenningsData {
    p: u32,
    letters: Vec<JenningsLetter>,
    layers: Vec<Vec<u32>>,
    monomials: Vec<Monomial>,
    vectors: Vec<FpVector>,
}

impl JenningsData {
    pub fn letters(&self) -> &[JenningsLetter] {
        &self.letters
    }

    /// Representatives of `D_i / D_{i+1}`, entry `i - 1`.
    pub fn layers(&self) -> &[Vec<u32>] {
        &self.layers
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Coefficient vector of each monomial, parallel to [`Self::monomials`].
    pub fn vectors(&self) -> &[FpVector] {
        &self.vectors
    }

    pub fn weights(&self) -> Vec<u32> {
        self.letters.iter().map(|l| l.weight).collect()
    }

    /// Position of the monomial with the given exponents.
    pub fn position(&self, exponents: &[u32]) -> Option<usize> {
        self.monomials.iter().position(|m| m.exponents == exponents)
    }

    /// Monomials of weight exactly `w`, as indices.
    pub fn of_weight(&self, w: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.monomials.len()).filter(move |&i| self.monomials[i].weight == w)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
}

/// Layer representatives chosen greedily: pc generators first, then all
/// elements in index order, keeping those independent modulo `D_{i+1}`.
fn layer_representatives(g: &Group, series: &DimensionSeries) -> Vec<Vec<u32>> {
    let mut order: Vec<u32> = g.generators().to_vec();
    order.extend(g.elements().filter(|x| !g.generators().contains(x)));
    let mut layers = Vec::new();
    for i in 1..series.length() {
        let di = series.term(i);
        let next = series.term(i + 1);
        let mut gens = g.subgroup_generators(next);
        let mut span = next.clone();
        let mut reps = Vec::new();
        for &x in &order {
            if span.order() == di.order() {
                break;
            }
            if di.contains(x) && !span.contains(x) {
                reps.push(x);
                gens.push(x);
                span = g.subgroup_closure(&gens).expect("same parent");
            }
        }
        layers.push(reps);
    }
    layers
}

/// Builds the Jennings basis and checks that it is a basis of `kG` and that
/// monomials of weight at least `n` span `I^n` for every `n`.
pub fn jennings_basis(alg: &GroupAlgebra) -> Result<JenningsData> {
    let g = alg.group();
    let p = g.p();
    let series = g.dimension_subgroups()?;
    let layers = layer_representatives(g, &series);
    let letters: Vec<JenningsLetter> = layers
        .iter()
        .enumerate()
        .flat_map(|(i, reps)| {
            reps.iter().map(move |&x| JenningsLetter {
                element: x,
                weight: i as u32 + 1,
            })
        })
        .collect();
    let l = letters.len();
    let total = (p as usize).pow(l as u32);
    if total != g.order() {
        return Err(verification(
            "Jennings basis",
            format!(
                "{l} letters give {total} monomials for a group of order {}",
                g.order()
            ),
        ));
    }

    // exponent vectors in lexicographic order, each built from its predecessor
    // with the last nonzero exponent lowered
    let mut by_lex: Vec<(Vec<u32>, FpVector)> = Vec::with_capacity(total);
    by_lex.push((vec![0; l], alg.one_vector()));
    for code in 1..total {
        let mut e = vec![0u32; l];
        let mut c = code;
        for k in (0..l).rev() {
            e[k] = (c % p as usize) as u32;
            c /= p as usize;
        }
        let k = e.iter().rposition(|&x| x != 0).expect("nonzero code");
        let prev = code - (p as usize).pow((l - 1 - k) as u32);
        let v = alg.mul_minus_one(&by_lex[prev].1, letters[k].element);
        by_lex.push((e, v));
    }
    let mut entries: Vec<(Monomial, FpVector)> = by_lex
        .into_iter()
        .map(|(e, v)| {
            let weight = e.iter().zip(&letters).map(|(&a, lt)| a * lt.weight).sum();
            (
                Monomial {
                    exponents: e,
                    weight,
                },
                v,
            )
        })
        .collect();
    entries.sort_by(|a, b| (a.0.weight, &a.0.exponents).cmp(&(b.0.weight, &b.0.exponents)));
    let (monomials, vectors): (Vec<Monomial>, Vec<FpVector>) = entries.into_iter().unzip();

    let data = JenningsData {
        p,
        letters,
        layers,
        monomials,
        vectors,
    };
    check_basis(alg, &data)?;
    Ok(data)
}

fn check_basis(alg: &GroupAlgebra, data: &JenningsData) -> Result<()> {
    let top = data.monomials.last().map_or(0, |m| m.weight) as usize;
    let mut span = EchelonSubspace::zero(alg.p(), alg.dim())?;
    let mut k = data.monomials.len();
    for n in (0..=top + 1).rev() {
        while k > 0 && data.monomials[k - 1].weight as usize >= n {
            k -= 1;
            span.insert(data.vectors[k].clone())?;
        }
        if &span != alg.radical_power(n) {
            return Err(verification(
                "Jennings basis",
                format!("monomials of weight >= {n} do not span I^{n}"),
            ));
        }
    }
    if span.dim() != alg.dim() {
        return Err(verification("Jennings basis", "monomials are not a basis"));
    }
    Ok(())
}

/// Coefficients of `prod_i (1 + t^{w_i} + ... + t^{(p-1) w_i})`.
pub fn weight_polynomial(weights: &[u32], p: u32) -> Vec<u64> {
    let mut poly = vec![1u64];
    for &w in weights {
        let mut next = vec![0u64; poly.len() + ((p - 1) * w) as usize];
        for (d, &c) in poly.iter().enumerate() {
            for a in 0..p {
                next[d + (a * w) as usize] += c;
            }
        }
        poly = next;
    }
    poly
}

/// `dim I^n / I^{n+1}` for `n = 0, 1, ...` until `I^n = 0`.
pub fn graded_dims(alg: &GroupAlgebra) -> Vec<u64> {
    let powers = alg.radical_powers();
    powers
        .windows(2)
        .map(|w| (w[0].dim() - w[1].dim()) as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    fn algebra(f: Family) -> GroupAlgebra {
        GroupAlgebra::new(build(&f).unwrap())
    }

    #[test]
    fn both_sides_agree_on_small_groups() {
        for fam in [
            Family::Dihedral { order: 8 },
            Family::Quaternion { order: 16 },
            Family::Elementary { p: 2, rank: 3 },
            Family::Heisenberg { p: 3 },
            Family::ExtraspecialMetacyclic { p: 3 },
        ] {
            let a = algebra(fam.clone());
            let alg_side = dimension_subgroups_algebra_side(&a).unwrap();
            let grp_side = a.group().dimension_subgroups().unwrap();
            assert_eq!(alg_side.terms(), grp_side.terms(), "{fam}");
        }
    }

    #[test]
    fn d16_weights_and_graded_dims() {
        let a = algebra(Family::Dihedral { order: 16 });
        let j = jennings_basis(&a).unwrap();
        assert_eq!(j.weights(), vec![1, 1, 2, 4]);
        let g = a.group();
        let (x, y) = (g.word(&[(0, 1)]).unwrap(), g.word(&[(1, 1)]).unwrap());
        let elems: Vec<u32> = j.letters().iter().map(|l| l.element).collect();
        assert_eq!(elems, vec![x, y, g.pow(x, 2), g.pow(x, 4)]);
        let poly = weight_polynomial(&j.weights(), 2);
        assert_eq!(poly, graded_dims(&a));
        assert_eq!(poly, vec![1, 2, 2, 2, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn cyclic_basis_is_powers_of_g_minus_one() {
        let a = algebra(Family::Cyclic { p: 5, log_order: 1 });
        let j = jennings_basis(&a).unwrap();
        let gm = a.embed_minus_one(j.letters()[0].element);
        for (k, v) in j.vectors().iter().enumerate() {
            assert_eq!(v, a.pow(&gm, k as u64).unwrap().coeffs());
        }
    }

    #[test]
    fn elementary_abelian_has_trivial_d2() {
        let a = algebra(Family::Elementary { p: 3, rank: 2 });
        let s = dimension_subgroups_algebra_side(&a).unwrap();
        assert!(s.term(2).is_trivial());
    }
}
