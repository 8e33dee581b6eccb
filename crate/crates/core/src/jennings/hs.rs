use fplinalg::FpVector;

use crate::algebra::{GroupAlgebra, Ideal};
use crate::jennings::{zassenhaus_ideal, JenningsData, Monomial, DEFAULT_POWER_ENUMERATION_CAP};
use crate::Result;

/// An ideal `J` containing `I^n`, `n` the least index with `D_n = 1`, with
/// `J ∩ L_k ⊆ I^{k+1}` for all `k`, grown greedily from Jennings monomials.
#[derive(Clone, Debug)]
pub struct HertweckSorianoIdeal {
    pub n: usize,
    pub ideal: Ideal,
    /// Monomials added to `I^n`, in the order they were accepted.
    pub generators: Vec<Monomial>,
    pub rejected: Vec<Monomial>,
}

/// Sweeps the monomials of degree at least 2 and weight below `n` by
/// decreasing weight, then monomial order, keeping each one whose generated
/// ideal still meets every `L_k` inside `I^{k+1}`.
pub fn hertweck_soriano_ideal(
    alg: &GroupAlgebra,
    jennings: &JenningsData,
) -> Result<HertweckSorianoIdeal> {
    let n = alg.group().dimension_subgroups()?.length();
    let zassenhaus: Vec<Ideal> = (1..n)
        .map(|k| zassenhaus_ideal(alg, k, DEFAULT_POWER_ENUMERATION_CAP).map(|z| z.ideal))
        .collect::<Result<_>>()?;
    let admissible = |j: &Ideal| -> Result<bool> {
        for (k, l) in (1..n).zip(&zassenhaus) {
            if !j
                .space()
                .intersection(l.space())?
                .is_subspace_of(alg.radical_power(k + 1))?
            {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut candidates: Vec<usize> = (0..jennings.monomials().len())
        .filter(|&i| {
            let m = &jennings.monomials()[i];
            m.degree() >= 2 && (m.weight as usize) < n
        })
        .collect();
    // monomials are already in (weight, lex) order; a stable sort on weight
    // alone keeps the lex order inside each weight
    candidates.sort_by_key(|&i| std::cmp::Reverse(jennings.monomials()[i].weight));

    let mut ideal = alg.ideal_power(n);
    let mut generators = Vec::new();
    let mut rejected = Vec::new();
    for i in candidates {
        let v = &jennings.vectors()[i];
        if ideal.space().contains(v)? {
            continue;
        }
        let mut seeds: Vec<FpVector> = ideal.space().rows().to_vec();
        seeds.push(v.clone());
        let trial = alg.ideal_closure(&seeds)?;
        if admissible(&trial)? {
            ideal = trial;
            generators.push(jennings.monomials()[i].clone());
        } else {
            rejected.push(jennings.monomials()[i].clone());
        }
    }
    Ok(HertweckSorianoIdeal {
        n,
        ideal,
        generators,
        rejected,
    })
}
