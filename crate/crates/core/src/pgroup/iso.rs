use std::collections::BTreeMap;

use crate::pgroup::Group;
use crate::{Error, Result};

/// Default largest order for the isomorphism search.
pub const DEFAULT_ISO_CAP: usize = 128;

fn order_histogram(g: &Group) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for x in g.elements() {
        *h.entry(g.element_order(x)).or_insert(0) += 1;
    }
    h
}

/// A generating set of minimal size: elements chosen outside the Frattini
/// subgroup until their images span `G / Phi(G)`.
pub(crate) fn minimal_generators(g: &Group) -> Vec<u32> {
    let phi = g.frattini();
    let phi_gens = g.subgroup_generators(&phi);
    let mut chosen: Vec<u32> = Vec::new();
    let mut span = phi.members().to_vec();
    let mut in_span = vec![false; g.order()];
    for &x in &span {
        in_span[x as usize] = true;
    }
    for x in g.elements() {
        if in_span[x as usize] {
            continue;
        }
        chosen.push(x);
        let mut all = phi_gens.clone();
        all.extend_from_slice(&chosen);
        span = g.close(&all);
        in_span.iter_mut().for_each(|b| *b = false);
        for &y in &span {
            in_span[y as usize] = true;
        }
        if span.len() == g.order() {
            break;
        }
    }
    chosen
}

/// Extends `gens[i] -> images[i]` to a map on all of `g`, returning it if the
/// extension is a well-defined bijective homomorphism.
fn extend(g: &Group, h: &Group, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let mut phi = vec![u32::MAX; g.order()];
    phi[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(phi[x as usize], t);
            if phi[y as usize] == u32::MAX {
                phi[y as usize] = img;
                queue.push(y);
            } else if phi[y as usize] != img {
                return None;
            }
        }
    }
    let mut seen = vec![false; h.order()];
    for &v in &phi {
        if v == u32::MAX || std::mem::replace(&mut seen[v as usize], true) {
            return None;
        }
    }
    Some(phi)
}

/// An isomorphism `g -> h` as the image of each element, if one exists.
/// Both groups must have order at most `cap`.
pub fn find_isomorphism(g: &Group, h: &Group, cap: usize) -> Result<Option<Vec<u32>>> {
    for x in [g, h] {
        if x.order() > cap {
            return Err(Error::CapExceeded {
                what: "isomorphism test order",
                size: x.order() as u128,
                cap: cap as u128,
            });
        }
    }
    if g.p() != h.p() || g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    if order_histogram(g) != order_histogram(h) {
        return Ok(None);
    }
    let gens = minimal_generators(g);
    if gens.len() != minimal_generators(h).len() {
        return Ok(None);
    }
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&t| h.element_order(t) == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &candidates, &mut images))
}

fn search(
    g: &Group,
    h: &Group,
    gens: &[u32],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    let k = images.len();
    if k == gens.len() {
        return extend(g, h, gens, images);
    }
    for &t in &candidates[k] {
        let compatible = (0..k).all(|i| {
            g.element_order(g.mul(gens[i], gens[k])) == h.element_order(h.mul(images[i], t))
                && g.element_order(g.commutator(gens[i], gens[k]))
                    == h.element_order(h.commutator(images[i], t))
        });
        if !compatible {
            continue;
        }
        images.push(t);
        if let Some(phi) = search(g, h, gens, candidates, images) {
            return Some(phi);
        }
        images.pop();
    }
    None
}

pub fn is_isomorphic_small(g: &Group, h: &Group, cap: usize) -> Result<bool> {
    Ok(find_isomorphism(g, h, cap)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    #[test]
    fn small_groups_are_told_apart() {
        let d8 = build(&Family::Dihedral { order: 8 }).unwrap();
        let q8 = build(&Family::Quaternion { order: 8 }).unwrap();
        let c42 = build(&Family::Abelian {
            p: 2,
            exponents: vec![2, 1],
        })
        .unwrap();
        assert!(is_isomorphic_small(&d8, &d8, 128).unwrap());
        assert!(!is_isomorphic_small(&d8, &q8, 128).unwrap());
        assert!(!is_isomorphic_small(&d8, &c42, 128).unwrap());
    }

    #[test]
    fn relabelled_table_is_recognized() {
        let d16 = build(&Family::Dihedral { order: 16 }).unwrap();
        let n = d16.order();
        // conjugate the labels by the permutation x -> 7x mod 16 fixing 0
        let perm: Vec<u32> = (0..n as u32).map(|x| (x * 7) % n as u32).collect();
        let mut inv = vec![0u32; n];
        for (x, &y) in perm.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = d16.mul(inv[x], inv[y]);
                table[x * n + y] = perm[z as usize];
            }
        }
        let other = Group::from_table(2, table).unwrap();
        let phi = find_isomorphism(&d16, &other, 128).unwrap().unwrap();
        for x in d16.elements() {
            for y in d16.elements() {
                assert_eq!(
                    phi[d16.mul(x, y) as usize],
                    other.mul(phi[x as usize], phi[y as usize])
                );
            }
        }
        let sd16 = build(&Family::Semidihedral { order: 16 }).unwrap();
        assert!(!is_isomorphic_small(&sd16, &other, 128).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = build(&Family::Cyclic { p: 2, log_order: 8 }).unwrap();
        assert!(matches!(
            is_isomorphic_small(&g, &g, 128),
            Err(Error::CapExceeded { .. })
        ));
    }
}
