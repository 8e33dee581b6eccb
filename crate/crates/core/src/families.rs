//! Named families of p-groups, built from pc presentations.

use std::fmt;
use std::str::FromStr;

use crate::pgroup::{Group, PcPresentation, DEFAULT_ORDER_CAP};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `C_{p^k}`.
    Cyclic {
        p: u32,
        log_order: u32,
    },
    /// `C_p^rank`.
    Elementary {
        p: u32,
        rank: u32,
    },
    /// `C_{p^{e_1}} x C_{p^{e_2}} x ...`.
    Abelian {
        p: u32,
        exponents: Vec<u32>,
    },
    Dihedral {
        order: u32,
    },
    Semidihedral {
        order: u32,
    },
    Quaternion {
        order: u32,
    },
    /// Extraspecial group of order `p^3` and exponent `p` (the Heisenberg group).
    Heisenberg {
        p: u32,
    },
    /// Extraspecial group of order `p^3` and exponent `p^2`.
    ExtraspecialMetacyclic {
        p: u32,
    },
    /// `<x,y | z = [y,x], x^{2^n} = y^{2^m} = z^4 = 1, z^x = z^y = z^{-1}>`.
    MipG {
        n: u32,
        m: u32,
    },
    /// `<a,b | c = [b,a], a^{2^n} = b^{2^m} = c^4 = 1, c^a = c^{-1}, c^b = c>`.
    MipH {
        n: u32,
        m: u32,
    },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic { p, log_order } => write!(f, "cyclic:{p}:{log_order}"),
            Family::Elementary { p, rank } => write!(f, "elementary:{p}:{rank}"),
            Family::Abelian { p, exponents } => {
                let e: Vec<String> = exponents.iter().map(u32::to_string).collect();
                write!(f, "abelian:{p}:{}", e.join(","))
            }
            Family::Dihedral { order } => write!(f, "dihedral:{order}"),
            Family::Semidihedral { order } => write!(f, "semidihedral:{order}"),
            Family::Quaternion { order } => write!(f, "quaternion:{order}"),
            Family::Heisenberg { p } => write!(f, "heisenberg:{p}"),
            Family::ExtraspecialMetacyclic { p } => write!(f, "extraspecial-metacyclic:{p}"),
            Family::MipG { n, m } => write!(f, "mip-g:{n}:{m}"),
            Family::MipH { n, m } => write!(f, "mip-h:{n}:{m}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses the form printed by `Display`, e.g. `dihedral:16`,
    /// `abelian:2:2,1` or `mip-g:4:3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("cannot parse family `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u32> {
            parts
                .get(i)
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(bad)
        };
        let arity = |k: usize| {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let fam = match parts[0]
            .trim()
            .to_ascii_lowercase()
            .replace('_', "-")
            .as_str()
        {
            "cyclic" => {
                arity(2)?;
                Family::Cyclic {
                    p: num(1)?,
                    log_order: num(2)?,
                }
            }
            "elementary" => {
                arity(2)?;
                Family::Elementary {
                    p: num(1)?,
                    rank: num(2)?,
                }
            }
            "abelian" => {
                arity(2)?;
                let exponents = parts[2]
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad()))
                    .collect::<Result<Vec<u32>>>()?;
                Family::Abelian {
                    p: num(1)?,
                    exponents,
                }
            }
            "dihedral" => {
                arity(1)?;
                Family::Dihedral { order: num(1)? }
            }
            "semidihedral" => {
                arity(1)?;
                Family::Semidihedral { order: num(1)? }
            }
            "quaternion" => {
                arity(1)?;
                Family::Quaternion { order: num(1)? }
            }
            "heisenberg" => {
                arity(1)?;
                Family::Heisenberg { p: num(1)? }
            }
            "extraspecial-metacyclic" => {
                arity(1)?;
                Family::ExtraspecialMetacyclic { p: num(1)? }
            }
            "mip-g" => {
                arity(2)?;
                Family::MipG {
                    n: num(1)?,
                    m: num(2)?,
                }
            }
            "mip-h" => {
                arity(2)?;
                Family::MipH {
                    n: num(1)?,
                    m: num(2)?,
                }
            }
            _ => return Err(bad()),
        };
        Ok(fam)
    }
}

/// The pc presentation of a family member.
pub fn presentation(family: &Family) -> Result<PcPresentation> {
    match *family {
        Family::Cyclic { p, log_order } => abelian(p, &[log_order]),
        Family::Elementary { p, rank } => abelian(p, &vec![1; rank as usize]),
        Family::Abelian { p, ref exponents } => abelian(p, exponents),
        Family::Dihedral { order } => {
            let k = two_power(order, 4, "dihedral")? - 1;
            metacyclic(2, k, -1, 0)
        }
        Family::Semidihedral { order } => {
            let k = two_power(order, 16, "semidihedral")? - 1;
            metacyclic(2, k, (1i64 << (k - 1)) - 1, 0)
        }
        Family::Quaternion { order } => {
            let k = two_power(order, 8, "quaternion")? - 1;
            metacyclic(2, k, -1, 1u64 << (k - 1))
        }
        Family::Heisenberg { p } => {
            let mut pres = PcPresentation::new(p, 3)?;
            pres.set_conjugate(1, 0, &[0, 1, 1])?;
            Ok(pres)
        }
        Family::ExtraspecialMetacyclic { p } => metacyclic(p, 2, 1 + p as i64, 0),
        Family::MipG { n, m } => mip(n, m, true),
        Family::MipH { n, m } => mip(n, m, false),
    }
}

/// Builds the group with the default order cap.
pub fn build(family: &Family) -> Result<Group> {
    build_with_cap(family, DEFAULT_ORDER_CAP)
}

pub fn build_with_cap(family: &Family, cap: usize) -> Result<Group> {
    let pres = presentation(family)?;
    Ok(Group::from_presentation_with_cap(pres, cap)?.with_name(family.to_string()))
}

fn two_power(order: u32, least: u32, what: &str) -> Result<u32> {
    if order < least || !order.is_power_of_two() {
        return Err(Error::InvalidParameters(format!(
            "{what} groups need order a power of 2 at least {least}, got {order}"
        )));
    }
    Ok(order.trailing_zeros())
}

fn abelian(p: u32, exponents: &[u32]) -> Result<PcPresentation> {
    if exponents.contains(&0) {
        return Err(Error::InvalidParameters(
            "cyclic factor exponents must be positive".into(),
        ));
    }
    let total: u32 = exponents.iter().sum();
    let mut pres = PcPresentation::new(p, total as usize)?;
    let mut start = 0usize;
    for &e in exponents {
        for k in start..start + e as usize - 1 {
            let mut w = vec![0; total as usize];
            w[k + 1] = 1;
            pres.set_power(k, &w)?;
        }
        start += e as usize;
    }
    Ok(pres)
}

/// `<a, b | a^{p^k} = 1, b^p = a^s, a^b = a^r>` on the pc sequence
/// `a, b, a^p, a^{p^2}, ...`. Requires `r = 1 mod p` and `p | s`.
fn metacyclic(p: u32, k: u32, r: i64, s: u64) -> Result<PcPresentation> {
    let ka = k as usize;
    let n = ka + 1;
    let modulus = (p as i64).pow(k);
    let pos = |i: usize| if i == 0 { 0 } else { i + 1 };
    // a^v as a word in the a-digits
    let a_word = |v: i64| -> Vec<u32> {
        let mut v = v.rem_euclid(modulus);
        let mut w = vec![0u32; n];
        for i in 0..ka {
            w[pos(i)] = (v % p as i64) as u32;
            v /= p as i64;
        }
        w
    };
    let mut pres = PcPresentation::new(p, n)?;
    for i in 0..ka.saturating_sub(1) {
        pres.set_power(pos(i), &a_word((p as i64).pow(i as u32 + 1)))?;
    }
    pres.set_power(1, &a_word(s as i64))?;
    let mut w = a_word(1 - r);
    w[1] = 1;
    pres.set_conjugate(1, 0, &w)?;
    for i in 1..ka {
        pres.set_conjugate(pos(i), 1, &a_word((p as i64).pow(i as u32) * r))?;
    }
    Ok(pres)
}

/// pc sequence `x, y, z, x^2, .., x^{2^{n-1}}, y^2, .., y^{2^{m-1}}, z^2`.
fn mip(n: u32, m: u32, twisted: bool) -> Result<PcPresentation> {
    if !(n > m && m > 2) {
        return Err(Error::InvalidParameters(format!(
            "the counterexample family needs n > m > 2, got n = {n}, m = {m}"
        )));
    }
    let (n, m) = (n as usize, m as usize);
    let len = n + m + 2;
    let xs: Vec<usize> = std::iter::once(0).chain(3..3 + n - 1).collect();
    let ys: Vec<usize> = std::iter::once(1).chain(2 + n..2 + n + m - 1).collect();
    let (z1, z2) = (2, len - 1);
    let word = |ps: &[usize]| {
        let mut w = vec![0u32; len];
        for &i in ps {
            w[i] = 1;
        }
        w
    };
    let mut pres = PcPresentation::new(2, len)?;
    for chain in [&xs, &ys] {
        for pair in chain.windows(2) {
            pres.set_power(pair[0], &word(&[pair[1]]))?;
        }
    }
    pres.set_power(z1, &word(&[z2]))?;
    pres.set_conjugate(ys[0], xs[0], &word(&[ys[0], z1]))?;
    pres.set_conjugate(z1, xs[0], &word(&[z1, z2]))?;
    if twisted {
        pres.set_conjugate(z1, ys[0], &word(&[z1, z2]))?;
    } else {
        pres.set_conjugate(ys[1], xs[0], &word(&[ys[1], z2]))?;
    }
    Ok(pres)
}

/// Elements `(x, y, z)` of a counterexample group: the two defining
/// generators and their commutator.
pub fn mip_generators(g: &Group) -> Result<(u32, u32, u32)> {
    let x = g.word(&[(0, 1)])?;
    let y = g.word(&[(1, 1)])?;
    let z = g.word(&[(2, 1)])?;
    Ok((x, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_names() {
        for (fam, order) in [
            (Family::Dihedral { order: 16 }, 16),
            (Family::Quaternion { order: 16 }, 16),
            (Family::Semidihedral { order: 32 }, 32),
            (Family::Heisenberg { p: 3 }, 27),
            (Family::ExtraspecialMetacyclic { p: 3 }, 27),
            (
                Family::Abelian {
                    p: 3,
                    exponents: vec![2, 1],
                },
                27,
            ),
            (Family::MipG { n: 4, m: 3 }, 512),
            (Family::MipH { n: 4, m: 3 }, 512),
        ] {
            let g = build(&fam).unwrap();
            assert_eq!(g.order(), order, "{fam}");
            assert_eq!(fam.to_string().parse::<Family>().unwrap(), fam);
        }
        assert!("dihedral".parse::<Family>().is_err());
        assert!(build(&Family::MipG { n: 3, m: 3 }).is_err());
    }

    #[test]
    fn metacyclic_relations() {
        let q = build(&Family::Quaternion { order: 16 }).unwrap();
        let (a, b) = (q.word(&[(0, 1)]).unwrap(), q.word(&[(1, 1)]).unwrap());
        assert_eq!(q.element_order(a), 8);
        assert_eq!(q.pow(b, 2), q.pow(a, 4));
        assert_eq!(q.conjugate(a, b), q.inv(a));
        let sd = build(&Family::Semidihedral { order: 16 }).unwrap();
        let (a, b) = (sd.word(&[(0, 1)]).unwrap(), sd.word(&[(1, 1)]).unwrap());
        assert_eq!(sd.conjugate(a, b), sd.pow(a, 3));
        assert_eq!(sd.pow(b, 2), 0);
        assert_eq!(build(&Family::Heisenberg { p: 3 }).unwrap().exponent(), 3);
        assert_eq!(
            build(&Family::ExtraspecialMetacyclic { p: 3 })
                .unwrap()
                .exponent(),
            9
        );
    }

    #[test]
    fn counterexample_relations() {
        for twisted in [true, false] {
            let fam = if twisted {
                Family::MipG { n: 4, m: 3 }
            } else {
                Family::MipH { n: 4, m: 3 }
            };
            let g = build(&fam).unwrap();
            let (x, y, z) = mip_generators(&g).unwrap();
            assert_eq!(g.commutator(y, x), z);
            assert_eq!(g.element_order(x), 16);
            assert_eq!(g.element_order(y), 8);
            assert_eq!(g.element_order(z), 4);
            assert_eq!(g.conjugate(z, x), g.inv(z));
            let zy = if twisted { g.inv(z) } else { z };
            assert_eq!(g.conjugate(z, y), zy);
            assert_eq!(g.subgroup_closure(&[x, y]).unwrap().order(), 512);
        }
    }
}
