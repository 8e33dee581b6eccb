//! End-to-end certification of the worked examples and of the order
//! `2^{n+m+2}` counterexample pair.

use std::collections::VecDeque;
use std::sync::Arc;

use fplinalg::FpVector;
use serde::Serialize;

use crate::algebra::{
    enumerate_normalized_units, unit_closure, FiniteAlgebra, GroupAlgebra, QuotientAlgebra,
    UnitClosure,
};
use crate::families::{build, build_with_cap, mip_generators, Family};
use crate::invariants::{compare, Caps, ComparisonReport};
use crate::jennings::{complement_of_l2, hertweck_soriano_ideal, jennings_basis};
use crate::pgroup::{is_isomorphic_small, AbelianType, Group, DEFAULT_ORDER_CAP};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn check_mip(n: u32, m: u32) -> Result<()> {
    if !(n > m && m > 2) {
        return Err(Error::InvalidParameters(format!(
            "need n > m > 2, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

fn mip_algebra(n: u32, m: u32, cap: usize) -> Result<GroupAlgebra> {
    check_mip(n, m)?;
    Ok(GroupAlgebra::new(build_with_cap(
        &Family::MipH { n, m },
        cap,
    )?))
}

/// `u^{-1} v^{-1} u v`.
fn comm<A: FiniteAlgebra>(a: &A, u: &FpVector, v: &FpVector) -> Result<FpVector> {
    let ui = a.inverse_vector(u)?;
    let vi = a.inverse_vector(v)?;
    Ok(a.mul_vectors(&a.mul_vectors(&ui, &vi), &a.mul_vectors(u, v)))
}

/// `v^{-1} u v`.
fn conj<A: FiniteAlgebra>(a: &A, u: &FpVector, v: &FpVector) -> Result<FpVector> {
    Ok(a.mul_vectors(&a.mul_vectors(&a.inverse_vector(v)?, u), v))
}

fn commute<A: FiniteAlgebra>(a: &A, u: &FpVector, v: &FpVector) -> bool {
    a.mul_vectors(u, v) == a.mul_vectors(v, u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonIsomorphismWitness {
    pub n: u32,
    pub m: u32,
    pub centralizer_g: Option<AbelianType>,
    pub centralizer_h: Option<AbelianType>,
    pub expected_h: AbelianType,
    pub xy_order: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// `C_H(H')` has type `C_{2^{n-1}} x C_{2^m} x C_4` while `C_G(G')` contains
/// `xy` of order `2^n`.
pub fn verify_nonisomorphism(n: u32, m: u32, cap: usize) -> Result<NonIsomorphismWitness> {
    check_mip(n, m)?;
    let g = build_with_cap(&Family::MipG { n, m }, cap)?;
    let h = build_with_cap(&Family::MipH { n, m }, cap)?;
    let centralizer_type = |k: &Group| -> Result<Option<AbelianType>> {
        let c = k.centralizer(&k.derived_subgroup())?;
        let (cg, _) = k.subgroup_as_group(&c)?;
        Ok(if cg.is_abelian() {
            Some(cg.abelian_type_of_group()?)
        } else {
            None
        })
    };
    let tg = centralizer_type(&g)?;
    let th = centralizer_type(&h)?;
    let expected_h = AbelianType::from_cyclic_exponents(2, &[n - 1, m, 2]);
    let (x, y, _) = mip_generators(&g)?;
    let xy = g.mul(x, y);
    let xy_order = g.element_order(xy);
    let cg = g.centralizer(&g.derived_subgroup())?;
    let checks = vec![
        Check::new(
            "centralizer of H' has the expected type",
            th.as_ref() == Some(&expected_h),
            format!(
                "{} vs {expected_h}",
                th.as_ref()
                    .map_or("nonabelian".to_string(), |t| t.to_string())
            ),
        ),
        Check::new(
            "xy lies in the centralizer of G' and has order 2^n",
            cg.contains(xy) && xy_order == 1u64 << n,
            format!("order {xy_order}"),
        ),
        Check::new(
            "the two centralizers are not isomorphic",
            tg != th && (xy_order as u128) > th.as_ref().map_or(0, |t| 2u128.pow(t.exponent_log())),
            format!(
                "{} vs {}",
                tg.as_ref().map_or("nonabelian".into(), |t| t.to_string()),
                th.as_ref().map_or("nonabelian".into(), |t| t.to_string())
            ),
        ),
    ];
    let passed = all_pass(&checks);
    Ok(NonIsomorphismWitness {
        n,
        m,
        centralizer_g: tg,
        centralizer_h: th,
        expected_h,
        xy_order,
        checks,
        passed,
    })
}

/// The second generator of the candidate group basis in `F_2[H]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondGenerator {
    /// `b(a+b+ab)c`
    Certified,
    /// `b(a+b+ab)`, dropping `c`
    WithoutC,
    /// `b` itself
    Plain,
}

impl SecondGenerator {
    pub fn expression(self) -> &'static str {
        match self {
            SecondGenerator::Certified => "b(a+b+ab)c",
            SecondGenerator::WithoutC => "b(a+b+ab)",
            SecondGenerator::Plain => "b",
        }
    }

    fn vector(self, alg: &GroupAlgebra) -> Result<FpVector> {
        let h = alg.group();
        let (a, b, c) = mip_generators(h)?;
        let ab = h.mul(a, b);
        let b_elt = alg.embed(b);
        let v = match self {
            SecondGenerator::Plain => return Ok(b_elt.into_coeffs()),
            _ => alg.mul(&b_elt, &alg.from_terms(&[(a, 1), (b, 1), (ab, 1)]))?,
        };
        let v = if self == SecondGenerator::Certified {
            alg.mul(&v, &alg.embed(c))?
        } else {
            v
        };
        Ok(v.into_coeffs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupBasisWitness {
    pub n: u32,
    pub m: u32,
    pub first_generator: String,
    pub second_generator: String,
    /// `None` when the closure grew past the cap.
    pub closure_order: Option<usize>,
    pub span_rank: Option<usize>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Runs the seven checks on `a` and the chosen second generator in `F_2[H]`.
/// Every check is evaluated; the witness passes only if all of them do.
pub fn verify_group_basis(
    n: u32,
    m: u32,
    second: SecondGenerator,
    cap: usize,
) -> Result<GroupBasisWitness> {
    let alg = mip_algebra(n, m, cap)?;
    let (a, b, _) = mip_generators(alg.group())?;
    let x = alg.embed(a).into_coeffs();
    let y = second.vector(&alg)?;
    let one = alg.one_vector();
    let order = alg.dim();
    let mut checks = Vec::new();

    checks.push(step_one(&alg, &y, b)?);
    let xn = alg.pow_vector(&x, 1 << n);
    checks.push(Check::new("x^(2^n) = 1", xn == one, ""));
    let ym = alg.pow_vector(&y, 1 << m);
    checks.push(Check::new("y^(2^m) = 1", ym == one, ""));
    let z = comm(&alg, &y, &x)?;
    let zi = alg.inverse_vector(&z)?;
    let zx = conj(&alg, &z, &x)? == zi;
    let zy = conj(&alg, &z, &y)? == zi;
    checks.push(Check::new(
        "z = [y, x] is inverted by x and by y",
        zx && zy,
        format!("z^x = z^-1: {zx}, z^y = z^-1: {zy}"),
    ));
    checks.push(Check::new("z^4 = 1", alg.pow_vector(&z, 4) == one, ""));

    let (closure_order, span_rank, closure) =
        match unit_closure(&alg, &[x.clone(), y.clone()], 2 * order) {
            Ok(c) => {
                let r = c.span_rank();
                (Some(c.order()), Some(r), Some(c))
            }
            Err(Error::CapExceeded { .. }) => (None, None, None),
            Err(e) => return Err(e),
        };
    checks.push(Check::new(
        "closure is a group basis",
        closure_order == Some(order) && span_rank == Some(order),
        match (closure_order, span_rank) {
            (Some(o), Some(r)) => format!("order {o}, span rank {r}, need {order}"),
            _ => format!("closure exceeds {}", 2 * order),
        },
    ));
    checks.push(match &closure {
        Some(c) => step_seven(&alg, c, n, m)?,
        None => Check::new("closure is isomorphic to G", false, "no closure"),
    });

    let passed = all_pass(&checks);
    Ok(GroupBasisWitness {
        n,
        m,
        first_generator: "a".into(),
        second_generator: second.expression().into(),
        closure_order,
        span_rank,
        checks,
        passed,
    })
}

fn step_one(alg: &GroupAlgebra, y: &FpVector, b: u32) -> Result<Check> {
    let mut d = y.clone();
    d.add_scaled(&alg.embed(b).into_coeffs(), alg.p() - 1);
    let ok = alg.radical_power(2).contains(&d)?;
    Ok(Check::new(
        "y = b mod I^2",
        ok,
        "so a and y generate the algebra",
    ))
}

/// Checks step one on `b` itself; it holds trivially.
pub fn control_step_one(n: u32, m: u32, cap: usize) -> Result<Check> {
    let alg = mip_algebra(n, m, cap)?;
    let (_, b, _) = mip_generators(alg.group())?;
    step_one(&alg, &SecondGenerator::Plain.vector(&alg)?, b)
}

/// Right multiplication of closure members by the two generators.
fn cayley_edges<A: FiniteAlgebra>(alg: &A, c: &UnitClosure) -> Result<Vec<[u32; 2]>> {
    let gens: Vec<&FpVector> = c
        .generators()
        .iter()
        .map(|&i| &c.members()[i as usize])
        .collect();
    c.members()
        .iter()
        .map(|v| {
            let mut e = [0; 2];
            for (k, g) in gens.iter().enumerate() {
                e[k] = c
                    .index_of(&alg.mul_vectors(v, g))
                    .ok_or_else(|| crate::verification("closure", "product left the closure"))?;
            }
            Ok(e)
        })
        .collect()
}

/// The closure satisfies the relations of `G`, and `x -> a`, `y -> y~`
/// extends to a label-preserving bijection of Cayley graphs fixing the
/// identity, which is a group isomorphism from the pc group `G`.
fn step_seven(alg: &GroupAlgebra, c: &UnitClosure, n: u32, m: u32) -> Result<Check> {
    let name = "closure is isomorphic to G";
    let edges = cayley_edges(alg, c)?;
    let walk = |start: u32, word: &[(usize, u64)]| {
        let mut v = start;
        for &(k, e) in word {
            for _ in 0..e {
                v = edges[v as usize][k];
            }
        }
        v
    };
    let (xo, yo) = (1u64 << n, 1u64 << m);
    // z = y^-1 x^-1 y x, with inverses as positive powers
    let z_word = [(1, yo - 1), (0, xo - 1), (1, 1), (0, 1)];
    let z_inv = walk(0, &[(0, xo - 1), (1, yo - 1), (0, 1), (1, 1)]);
    let mut relations = vec![
        ("x^(2^n)", walk(0, &[(0, xo)]) == 0),
        ("y^(2^m)", walk(0, &[(1, yo)]) == 0),
    ];
    let z4 = (0..4).fold(0, |v, _| walk(v, &z_word));
    relations.push(("z^4", z4 == 0));
    let zx = walk(walk(0, &[(0, xo - 1)]), &z_word);
    let zx = walk(zx, &[(0, 1)]);
    relations.push(("z^x = z^-1", zx == z_inv));
    let zy = walk(walk(0, &[(1, yo - 1)]), &z_word);
    let zy = walk(zy, &[(1, 1)]);
    relations.push(("z^y = z^-1", zy == z_inv));
    if let Some((r, _)) = relations.iter().find(|(_, ok)| !ok) {
        return Ok(Check::new(
            name,
            false,
            format!("relation {r} fails in the closure"),
        ));
    }

    let g = build(&Family::MipG { n, m })?;
    let (gx, gy, _) = mip_generators(&g)?;
    if g.order() != c.order() {
        return Ok(Check::new(
            name,
            false,
            format!("orders {} and {}", g.order(), c.order()),
        ));
    }
    let mut phi = vec![u32::MAX; g.order()];
    phi[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(u) = queue.pop_front() {
        for (k, s) in [gx, gy].into_iter().enumerate() {
            let w = g.mul(u, s);
            let image = edges[phi[u as usize] as usize][k];
            if phi[w as usize] == u32::MAX {
                phi[w as usize] = image;
                queue.push_back(w);
            } else if phi[w as usize] != image {
                return Ok(Check::new(name, false, "Cayley graphs disagree"));
            }
        }
    }
    let mut seen = vec![false; c.order()];
    for &v in &phi {
        if v == u32::MAX || std::mem::replace(&mut seen[v as usize], true) {
            return Ok(Check::new(name, false, "map is not a bijection"));
        }
    }
    Ok(Check::new(
        name,
        true,
        "relations hold and x -> a, y -> y~ is an isomorphism",
    ))
}

/// The identities used in the hand proof, checked separately from the
/// direct computation.
pub fn verify_proof_identities(n: u32, m: u32, cap: usize) -> Result<Vec<Check>> {
    let alg = mip_algebra(n, m, cap)?;
    let h = alg.group();
    let (a, b, c) = mip_generators(h)?;
    let one = alg.one_vector();
    let e = |g: u32| alg.embed(g).into_coeffs();
    let mul = |u: &FpVector, v: &FpVector| alg.mul_vectors(u, v);
    let one_plus = |g: u32| {
        let mut v = one.clone();
        v.add_scaled(&e(g), 1);
        v
    };
    let x = e(a);
    let y = SecondGenerator::Certified.vector(&alg)?;
    let z = comm(&alg, &y, &x)?;
    let mut out = Vec::new();

    let x2 = mul(&x, &x);
    let lhs = comm(&alg, &y, &x2)?;
    let rhs = mul(&z, &conj(&alg, &z, &x)?);
    out.push(Check::new(
        "[y, x^2] = [y, x][y, x]^x = 1",
        lhs == rhs && lhs == one && commute(&alg, &x2, &y),
        "",
    ));

    // y = b^2 c + b a (1 + b) c, the two summands commuting
    let b2c = e(h.mul(h.mul(b, b), c));
    let t = mul(&mul(&mul(&e(b), &x), &one_plus(b)), &e(c));
    let mut sum = b2c.clone();
    sum.add_scaled(&t, 1);
    out.push(Check::new(
        "y = b^2 c + ba(1+b)c with commuting summands",
        sum == y && commute(&alg, &b2c, &t),
        "",
    ));
    let a2b2c = e(h.mul(h.mul(h.mul(a, a), h.mul(b, b)), c));
    let squarey = mul(&mul(&a2b2c, &one_plus(h.mul(b, c))), &one_plus(b));
    out.push(Check::new(
        "(ba(1+b)c)^2 = a^2 b^2 c (1+bc)(1+b)",
        mul(&t, &t) == squarey,
        "",
    ));
    let y2 = mul(&y, &y);
    let central = (0..3).all(|i| commute(&alg, &y2, &e(h.word(&[(i, 1)]).unwrap_or(0))));
    out.push(Check::new(
        "y^2 is central",
        central && commute(&alg, &y2, &x) && commute(&alg, &y2, &e(b)),
        "",
    ));
    let y2_lhs = comm(&alg, &x, &y2)?;
    let zy = comm(&alg, &x, &y)?;
    out.push(Check::new(
        "[x, y^2] = [x, y][x, y]^y = 1",
        y2_lhs == mul(&zy, &conj(&alg, &zy, &y)?) && y2_lhs == one,
        "",
    ));
    out.push(Check::new(
        "(b^2 c)^(2^m) = 1 and (ba(1+b)c)^(2^m) = 0",
        alg.pow_vector(&b2c, 1 << m) == one && alg.pow_vector(&t, 1 << m).is_zero(),
        "",
    ));
    let mut c1 = e(c);
    c1.add_scaled(&one, 1);
    let hprime = alg.relative_augmentation_ideal(&h.derived_subgroup())?;
    let mut z1 = z.clone();
    z1.add_scaled(&one, 1);
    let in_j = alg.ideal_closure(&[c1.clone()])?.space() == hprime.space()
        && hprime.space().contains(&z1)?;
    out.push(Check::new(
        "z - 1 lies in (c-1)kH and (c-1)^4 = 0",
        in_j && alg.pow_vector(&c1, 4).is_zero(),
        "",
    ));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleCertificate {
    pub n: u32,
    pub m: u32,
    pub nonisomorphism: NonIsomorphismWitness,
    pub group_basis: GroupBasisWitness,
    pub proof_identities: Vec<Check>,
    pub control: Check,
    /// Conjugacy classes of cyclic subgroups of `G` and `H`; they differ, so
    /// the rational group algebras are not isomorphic.
    pub rational_class_counts: (usize, usize),
    pub invariant_report: Option<ComparisonReport>,
    pub valid: bool,
}

impl CounterexampleCertificate {
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        serde_json::to_string_pretty(&value).expect("plain data")
    }

    /// Name of the first failing check, if any.
    pub fn first_failure(&self) -> Option<&str> {
        self.nonisomorphism
            .checks
            .iter()
            .chain(&self.group_basis.checks)
            .chain(&self.proof_identities)
            .chain(std::iter::once(&self.control))
            .find(|c| !c.passed)
            .map(|c| c.name.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CounterexampleOptions {
    pub cap: usize,
    pub second: SecondGenerator,
    /// Also compare the fingerprints of the two group algebras.
    pub compare_invariants: bool,
}

impl Default for CounterexampleOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_ORDER_CAP,
            second: SecondGenerator::Certified,
            compare_invariants: true,
        }
    }
}

pub fn verify_counterexample(
    n: u32,
    m: u32,
    opts: CounterexampleOptions,
) -> Result<CounterexampleCertificate> {
    let nonisomorphism = verify_nonisomorphism(n, m, opts.cap)?;
    let group_basis = verify_group_basis(n, m, opts.second, opts.cap)?;
    let proof_identities = verify_proof_identities(n, m, opts.cap)?;
    let control = control_step_one(n, m, opts.cap)?;
    let g = build_with_cap(&Family::MipG { n, m }, opts.cap)?;
    let h = build_with_cap(&Family::MipH { n, m }, opts.cap)?;
    let rational_class_counts = (rational_class_count(&g), rational_class_count(&h));
    let invariant_report = if opts.compare_invariants {
        let caps = Caps {
            order: opts.cap,
            ..Caps::default()
        };
        Some(compare(&GroupAlgebra::new(g), &GroupAlgebra::new(h), caps)?)
    } else {
        None
    };
    let valid = nonisomorphism.passed
        && group_basis.passed
        && all_pass(&proof_identities)
        && control.passed
        && rational_class_counts.0 != rational_class_counts.1;
    Ok(CounterexampleCertificate {
        n,
        m,
        nonisomorphism,
        group_basis,
        proof_identities,
        control,
        rational_class_counts,
        invariant_report,
        valid,
    })
}

/// Conjugacy classes of cyclic subgroups, the number of simple components
/// of the rational group algebra.
pub fn rational_class_count(g: &Group) -> usize {
    g.cyclic_subgroup_class_count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitSubgroup {
    /// Coefficient lists `[c_0, c_1, c_2]` of `c_0 + c_1 g + c_2 g^2`.
    pub members: Vec<Vec<u32>>,
    pub span_rank: usize,
    pub is_basis: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kc3Report {
    pub unit_order: usize,
    pub subgroups: Vec<UnitSubgroup>,
    pub basis_count: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn coeff_list(v: &FpVector) -> Vec<u32> {
    (0..v.len()).map(|i| v.get(i)).collect()
}

/// Group bases among the order-3 subgroups of `V(F_3[C_3])`.
pub fn verify_kc3() -> Result<Kc3Report> {
    let alg = GroupAlgebra::new(build(&Family::Cyclic { p: 3, log_order: 1 })?);
    let units = enumerate_normalized_units(&alg, 1 << 10)?;
    let one = alg.one_vector();
    let cubes = units.members().iter().all(|u| alg.pow_vector(u, 3) == one);
    let v = units.to_group(&alg)?;
    let elementary = v.is_abelian() && v.exponent() == 3;

    let mut seen: Vec<Vec<u32>> = Vec::new();
    let mut subgroups = Vec::new();
    for u in units.members().iter().skip(1) {
        let members = vec![one.clone(), u.clone(), alg.mul_vectors(u, u)];
        let mut key: Vec<u32> = members
            .iter()
            .map(|m| units.index_of(m).expect("closed"))
            .collect();
        key.sort_unstable();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let span_rank = fplinalg::rank(3, 3, &members)?;
        let mut lists: Vec<Vec<u32>> = members.iter().map(coeff_list).collect();
        lists.sort();
        subgroups.push(UnitSubgroup {
            members: lists,
            span_rank,
            is_basis: span_rank == 3,
        });
    }
    subgroups.sort_by(|a, b| a.members.cmp(&b.members));
    let basis_count = subgroups.iter().filter(|s| s.is_basis).count();

    // 1 + g + g^2 written with -1 = 2
    let set = |rows: [[u32; 3]; 3]| {
        let mut v: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        v.sort();
        v
    };
    let expected_bases = [
        set([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        set([[1, 0, 0], [2, 2, 0], [1, 2, 1]]),
        set([[1, 0, 0], [2, 0, 2], [1, 1, 2]]),
    ];
    let expected_other = set([[1, 0, 0], [0, 2, 2], [2, 1, 1]]);
    let listed = expected_bases
        .iter()
        .all(|e| subgroups.iter().any(|s| &s.members == e && s.is_basis))
        && subgroups
            .iter()
            .any(|s| s.members == expected_other && !s.is_basis);

    let checks = vec![
        Check::new("|V| = 9", units.order() == 9, format!("{}", units.order())),
        Check::new("every normalized unit has order dividing 3", cubes, ""),
        Check::new("V is elementary abelian", elementary, ""),
        Check::new(
            "V has 4 subgroups of order 3",
            subgroups.len() == 4,
            format!("{}", subgroups.len()),
        ),
        Check::new(
            "exactly 3 are group bases",
            basis_count == 3,
            format!("{basis_count}"),
        ),
        Check::new("the bases are the three listed sets", listed, ""),
    ];
    let passed = all_pass(&checks);
    Ok(Kc3Report {
        unit_order: units.order(),
        subgroups,
        basis_count,
        checks,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D16Report {
    pub n: usize,
    /// Exponent vectors over the letters `a, b, a^2, a^4`.
    pub generators: Vec<Vec<u32>>,
    pub quotient_dim: usize,
    pub unit_order: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// The ideal `J` of `F_2[D_16]` and the presentation of `V(kG/J)` on
/// `a, b, c = 1+(a-1)(b-1), d = 1+(b-1)(a^2-1), e = 1+(a-1)(a^2-1)`.
pub fn verify_d16_hs() -> Result<D16Report> {
    let alg = Arc::new(GroupAlgebra::new(build(&Family::Dihedral { order: 16 })?));
    let g = alg.group();
    let jd = jennings_basis(&alg)?;
    let hs = hertweck_soriano_ideal(&alg, &jd)?;
    let a = g.word(&[(0, 1)])?;
    let b = g.word(&[(1, 1)])?;
    let a2 = g.mul(a, a);
    let a4 = g.mul(a2, a2);
    let m1 = |x: u32| alg.embed_minus_one(x).into_coeffs();
    let mul = |u: &FpVector, v: &FpVector| alg.mul_vectors(u, v);

    let mut expected = alg.radical_power(5).clone();
    for v in alg
        .ideal_closure(&[mul(&mul(&m1(a), &m1(b)), &m1(a2))])?
        .space()
        .rows()
    {
        expected.insert(v.clone())?;
    }
    let generators: Vec<Vec<u32>> = hs
        .generators
        .iter()
        .map(|mo| mo.exponents.clone())
        .collect();
    let quotient = QuotientAlgebra::new(Arc::clone(&alg), hs.ideal.clone())?;
    let quotient_dim = quotient.dim();

    let one = alg.one_vector();
    let plus_one = |v: FpVector| {
        let mut w = one.clone();
        w.add_scaled(&v, 1);
        w
    };
    let listed_d = plus_one(mul(&m1(b), &m1(a2)));
    let swapped_d = plus_one(mul(&m1(a2), &m1(b)));
    let lift = [
        alg.embed(a).into_coeffs(),
        alg.embed(b).into_coeffs(),
        plus_one(mul(&m1(a), &m1(b))),
        listed_d.clone(),
        plus_one(mul(&m1(a), &m1(a2))),
    ];
    let q: Vec<FpVector> = lift
        .iter()
        .map(|v| quotient.project(v))
        .collect::<Result<_>>()?;
    let qa4 = quotient.project(&alg.embed(a4).into_coeffs())?;
    let failed = d16_relation_failures(&quotient, &q, &qa4)?;
    let mut q_swapped = q.clone();
    q_swapped[3] = quotient.project(&swapped_d)?;
    let failed_swapped = d16_relation_failures(&quotient, &q_swapped, &qa4)?;
    let cb = conj(&quotient, &q[2], &q[1])?;
    let cda4 = quotient.mul_vectors(&quotient.mul_vectors(&q[2], &q[3]), &qa4);

    let units = enumerate_normalized_units(&quotient, 1 << 10)?;
    let generated = unit_closure(&quotient, &q, 1 << 10)?;
    let checks = vec![
        Check::new("n = 5", hs.n == 5, format!("{}", hs.n)),
        Check::new(
            "J = I^5 + ((a-1)(b-1)(a^2-1))",
            hs.ideal.space() == &expected && generators == vec![vec![1, 1, 1, 0]],
            format!("{generators:?}"),
        ),
        Check::new("dim kG/J = 8", quotient_dim == 8, format!("{quotient_dim}")),
        Check::new(
            "|V(kG/J)| = 128",
            units.order() == 128,
            format!("{}", units.order()),
        ),
        Check::new(
            "a, b, c, d, e generate V(kG/J)",
            generated.order() == units.order(),
            format!("{}", generated.order()),
        ),
        Check::new(
            "presentation relations hold for the listed generators",
            failed.is_empty(),
            failing(&failed),
        ),
        Check::new("with the listed d, c^b = c d a^4", cb == cda4, ""),
        Check::new(
            "relations hold with d = 1+(a^2-1)(b-1)",
            failed_swapped.is_empty(),
            failing(&failed_swapped),
        ),
    ];
    let passed = all_pass(&checks);
    Ok(D16Report {
        n: hs.n,
        generators,
        quotient_dim,
        unit_order: units.order(),
        checks,
        passed,
    })
}

fn failing(relations: &[&str]) -> String {
    if relations.is_empty() {
        String::new()
    } else {
        format!("failing: {}", relations.join(", "))
    }
}

/// Relations of the presentation of `V(kG/J)` that fail for the images
/// `a, b, c, d, e` in `q`.
fn d16_relation_failures(
    quotient: &QuotientAlgebra,
    q: &[FpVector],
    qa4: &FpVector,
) -> Result<Vec<&'static str>> {
    let [qa, qb, qc, qd, qe] = [&q[0], &q[1], &q[2], &q[3], &q[4]];
    let qone = quotient.one_vector();
    let qm = |u: &FpVector, v: &FpVector| quotient.mul_vectors(u, v);
    let cj = |u: &FpVector, v: &FpVector| conj(quotient, u, v);
    let relations = [
        ("a^8 = 1", quotient.pow_vector(qa, 8) == qone),
        ("a^4 != 1", quotient.pow_vector(qa, 4) != qone),
        (
            "b^2 = c^2 = d^2 = e^2 = 1",
            [qb, qc, qd, qe]
                .iter()
                .all(|v| quotient.pow_vector(v, 2) == qone),
        ),
        ("a^b = a^-1", cj(qa, qb)? == quotient.inverse_vector(qa)?),
        ("c^b = cd", cj(qc, qb)? == qm(qc, qd)),
        ("c^a = ce", cj(qc, qa)? == qm(qc, qe)),
        ("d^a = d a^4", cj(qd, qa)? == qm(qd, qa4)),
        ("e^b = e a^4", cj(qe, qb)? == qm(qe, qa4)),
        ("e^a = e", cj(qe, qa)? == *qe),
        ("d^b = d", cj(qd, qb)? == *qd),
        ("c^d = c", cj(qc, qd)? == *qc),
        ("c^e = c", cj(qc, qe)? == *qc),
        ("d^e = d", cj(qd, qe)? == *qd),
    ];
    Ok(relations
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(r, _)| *r)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D8ComplementReport {
    pub quotient_dim: usize,
    pub unit_order: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// `V(kG/C) = G` for `G = D_8` and a complement `C` of `L_2` in `I^2/I^3`.
pub fn verify_d8_complement() -> Result<D8ComplementReport> {
    let alg = Arc::new(GroupAlgebra::new(build(&Family::Dihedral { order: 8 })?));
    let jd = jennings_basis(&alg)?;
    let c = complement_of_l2(&alg, &jd, 1 << 10)?;
    let quotient_dim = c.quotient.dim();
    let unit_order = c.units.order();
    let iso = is_isomorphic_small(&c.unit_group, alg.group(), 128)?;
    let checks = vec![
        Check::new("dim kG/C = 4", quotient_dim == 4, format!("{quotient_dim}")),
        Check::new("|V(kG/C)| = 8", unit_order == 8, format!("{unit_order}")),
        Check::new("V(kG/C) is isomorphic to D8", iso, ""),
    ];
    let passed = all_pass(&checks);
    Ok(D8ComplementReport {
        quotient_dim,
        unit_order,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kc3_has_three_bases() {
        let r = verify_kc3().unwrap();
        assert!(r.passed, "{:?}", r.checks);
        assert_eq!(r.basis_count, 3);
    }

    #[test]
    fn d16_example() {
        let r = verify_d16_hs().unwrap();
        let failing: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.detail.as_str())
            .collect();
        // the listed d = 1+(b-1)(a^2-1) gives c^b = c d a^4, not cd
        assert_eq!(failing, vec!["failing: c^b = cd"]);
        assert!(!r.passed);
        assert_eq!((r.quotient_dim, r.unit_order), (8, 128));
    }

    #[test]
    fn d8_complement() {
        assert!(verify_d8_complement().unwrap().passed);
    }

    #[test]
    fn rational_class_counts() {
        // 1, <-1>, <i>, <j>, <k>, all normal
        assert_eq!(
            rational_class_count(&build(&Family::Quaternion { order: 8 }).unwrap()),
            5
        );
        assert_eq!(
            rational_class_count(&build(&Family::Cyclic { p: 5, log_order: 1 }).unwrap()),
            2
        );
    }

    #[test]
    fn parameters_are_checked() {
        assert!(matches!(
            verify_nonisomorphism(3, 3, 1 << 12),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            verify_group_basis(4, 2, SecondGenerator::Certified, 1 << 12),
            Err(Error::InvalidParameters(_))
        ));
    }
}
