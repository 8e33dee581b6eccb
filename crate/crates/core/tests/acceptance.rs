//! One line per acceptance criterion; exits non-zero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use modisom::algebra::{FiniteAlgebra, GroupAlgebra};
use modisom::families::{build, Family};
use modisom::invariants::{
    compare, descriptors, kuelshammer_count_algebra, kuelshammer_count_group, pm_count_algebra,
    pm_count_group, Caps, KernelSizer, Verdict, DEFAULT_KERNEL_CAP,
};
use modisom::jennings::{
    dimension_subgroups_algebra_side, graded_dims, jennings_basis, weight_polynomial,
    zassenhaus_ideal, DEFAULT_POWER_ENUMERATION_CAP,
};
use modisom::pgroup::{AbelianType, Group};
use modisom::verify::{
    rational_class_count, verify_counterexample, verify_d16_hs, verify_d8_complement,
    verify_group_basis, verify_kc3, CounterexampleOptions, SecondGenerator,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: modisom::Error) -> String {
    err.to_string()
}

/// Built-in groups of order at most 2^6, with C_3, C_9 and the two groups of
/// order 27 and exponent 3 or 9.
fn corpus() -> Vec<Family> {
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push(Family::Cyclic { p: 2, log_order: k });
        if k >= 2 {
            out.push(Family::Elementary { p: 2, rank: k });
        }
    }
    fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            partitions(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    for k in 3..=6 {
        let mut parts = Vec::new();
        partitions(k, k, &mut Vec::new(), &mut parts);
        for exps in parts {
            if exps.len() >= 2 && exps[0] >= 2 {
                out.push(Family::Abelian {
                    p: 2,
                    exponents: exps,
                });
            }
        }
    }
    for order in [8, 16, 32, 64] {
        out.push(Family::Dihedral { order });
        out.push(Family::Quaternion { order });
        if order >= 16 {
            out.push(Family::Semidihedral { order });
        }
    }
    out.push(Family::Cyclic { p: 3, log_order: 1 });
    out.push(Family::Cyclic { p: 3, log_order: 2 });
    out.push(Family::Heisenberg { p: 3 });
    out.push(Family::ExtraspecialMetacyclic { p: 3 });
    out
}

fn log_p(x: u64, p: u32) -> u32 {
    let mut k = 0;
    let mut v = 1u64;
    while v < x {
        v *= p as u64;
        k += 1;
    }
    k
}

/// Peak resident set size in kB, where the platform reports it.
fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cert = verify_counterexample(4, 3, CounterexampleOptions::default()).map_err(e)?;
    let elapsed = start.elapsed();
    let basis = &cert.group_basis;
    for c in basis.checks.iter().chain(&cert.nonisomorphism.checks) {
        ensure(c.passed, format!("check `{}` failed: {}", c.name, c.detail))?;
    }
    ensure(basis.checks.len() == 7, "seven checks expected")?;
    ensure(
        basis.closure_order == Some(512) && basis.span_rank == Some(512),
        "closure is not a group basis of order 512",
    )?;
    let c8c8c4 = AbelianType::from_cyclic_exponents(2, &[3, 3, 2]);
    ensure(
        cert.nonisomorphism.centralizer_h.as_ref() == Some(&c8c8c4),
        "C_H(H') is not C8 x C8 x C4",
    )?;
    ensure(
        cert.nonisomorphism.xy_order == 16,
        "xy does not have order 16",
    )?;
    ensure(
        cert.valid,
        format!("certificate invalid at {:?}", cert.first_failure()),
    )?;
    ensure(
        elapsed <= Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    let rss = peak_rss_kb();
    if let Some(kb) = rss {
        ensure(kb <= 1 << 20, format!("peak memory {kb} kB"))?;
    }
    Ok(format!(
        "closure 512, rank 512, C_H(H') = {c8c8c4}, C_G(G') = {}, {:.2?}, peak rss {}",
        cert.nonisomorphism
            .centralizer_g
            .as_ref()
            .map_or("nonabelian".into(), |t| t.to_string()),
        elapsed,
        rss.map_or("n/a".into(), |kb| format!("{} MB", kb / 1024))
    ))
}

fn criterion_2() -> Outcome {
    let w = verify_group_basis(4, 3, SecondGenerator::WithoutC, 1 << 12).map_err(e)?;
    let failed: Vec<&str> = w
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    ensure(
        !w.passed && !failed.is_empty(),
        "mutated generator passes every check",
    )?;
    Ok(format!("b(a+b+ab) fails: {}", failed.join("; ")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let r = verify_kc3().map_err(e)?;
    let elapsed = start.elapsed();
    for c in &r.checks {
        ensure(c.passed, format!("check `{}` failed: {}", c.name, c.detail))?;
    }
    ensure(
        r.unit_order == 9 && r.basis_count == 3 && r.subgroups.len() == 4,
        "counts differ",
    )?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "|V| = 9, 3 of 4 subgroups are bases, {elapsed:.2?}"
    ))
}

/// Cosets `x + I^2` of `I/I^2` with `x^2` in `I^3`, by squaring every element
/// of `I`.
fn brute_force_square_kernel(alg: &GroupAlgebra) -> u64 {
    let i1 = alg.radical_power(1);
    let i2 = alg.radical_power(2);
    let i3 = alg.radical_power(3);
    let rows = i1.rows();
    let mut hits = 0u64;
    for mask in 0u64..(1 << rows.len()) {
        let mut x = alg.zero().into_coeffs();
        for (k, r) in rows.iter().enumerate() {
            if mask >> k & 1 == 1 {
                x.add_scaled(r, 1);
            }
        }
        if i3.contains(&alg.mul_vectors(&x, &x)).unwrap() {
            hits += 1;
        }
    }
    hits >> i2.dim()
}

fn criterion_4() -> Outcome {
    let mut sizes = Vec::new();
    for fam in [
        Family::Quaternion { order: 8 },
        Family::Dihedral { order: 8 },
    ] {
        let alg = GroupAlgebra::new(build(&fam).map_err(e)?);
        let jd = jennings_basis(&alg).map_err(e)?;
        let k = KernelSizer::new(&alg, &jd, DEFAULT_KERNEL_CAP)
            .kernel_size(1, 1)
            .map_err(e)?;
        let oracle = brute_force_square_kernel(&alg);
        ensure(
            k == Some(oracle),
            format!("{fam}: kernel size {k:?}, brute force {oracle}"),
        )?;
        sizes.push(oracle);
    }
    let d8 = GroupAlgebra::new(build(&Family::Dihedral { order: 8 }).map_err(e)?);
    let q8 = GroupAlgebra::new(build(&Family::Quaternion { order: 8 }).map_err(e)?);
    let r = compare(&d8, &q8, Caps::default()).map_err(e)?;
    let distinguished =
        matches!(&r.verdict, Verdict::Distinguished { field, .. } if field == "kernel_sizes");
    ensure(distinguished, "compare does not name kernel_sizes")?;
    ensure(
        sizes == [1, 2],
        format!("kernel sizes Q8 = {}, D8 = {}; expected 1 and 2 (D8: 0, b-1 and ab-1 all square into I^3)", sizes[0], sizes[1]),
    )?;
    Ok("Q8 1, D8 2, distinguished by kernel_sizes".into())
}

fn weights_from_series(g: &Group) -> Result<Vec<u32>, String> {
    let ranks = g.dimension_subgroups().map_err(e)?.layer_ranks(g.p());
    Ok(ranks
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| std::iter::repeat_n(i as u32 + 1, r as usize))
        .collect())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let groups = corpus();
    for fam in &groups {
        let alg = GroupAlgebra::new(build(fam).map_err(e)?);
        let group_side = alg.group().dimension_subgroups().map_err(e)?;
        let algebra_side = dimension_subgroups_algebra_side(&alg).map_err(e)?;
        ensure(
            group_side.length() == algebra_side.length(),
            format!("{fam}: series lengths differ"),
        )?;
        for (k, (a, b)) in group_side
            .terms()
            .iter()
            .zip(algebra_side.terms())
            .enumerate()
        {
            ensure(
                a.members() == b.members(),
                format!("{fam}: D_{} differs", k + 1),
            )?;
        }
        let expected = weight_polynomial(&weights_from_series(alg.group())?, alg.p());
        ensure(
            graded_dims(&alg) == expected,
            format!("{fam}: graded dimensions differ"),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed <= Duration::from_secs(30),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("{} groups, {elapsed:.2?}", groups.len()))
}

fn criterion_6() -> Outcome {
    let groups = corpus();
    let mut levels = 0;
    for fam in &groups {
        let alg = GroupAlgebra::new(build(fam).map_err(e)?);
        let series = alg.group().dimension_subgroups().map_err(e)?;
        for n in 1..=series.length() + 1 {
            let l = zassenhaus_ideal(&alg, n, DEFAULT_POWER_ENUMERATION_CAP)
                .map_err(|err| format!("{fam} n = {n}: {err}"))?;
            let mut rhs = alg.radical_power(n + 1).clone();
            let dn = if n <= series.length() {
                series.term(n).members().to_vec()
            } else {
                vec![0]
            };
            for g in dn {
                rhs.insert(alg.embed_minus_one(g).into_coeffs())
                    .map_err(|err| err.to_string())?;
            }
            ensure(l.ideal.space() == &rhs, format!("{fam}: L_{n} differs"))?;
            levels += 1;
        }
    }
    Ok(format!("{} groups, {levels} levels", groups.len()))
}

fn criterion_7() -> Outcome {
    let r = verify_d16_hs().map_err(e)?;
    let failed: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    ensure(
        r.quotient_dim == 8 && r.unit_order == 128,
        "dimension or unit order differs",
    )?;
    ensure(r.passed, failed.join("; "))?;
    Ok("J = I^5 + ((a-1)(b-1)(a^2-1)), dim 8, |V| = 128, relations hold".into())
}

fn criterion_8() -> Outcome {
    let r = verify_d8_complement().map_err(e)?;
    ensure(
        r.passed && r.quotient_dim == 4 && r.unit_order == 8,
        format!("{:?}", r.checks),
    )?;
    Ok("dim kG/C = 4, V(kG/C) = D8".into())
}

fn criterion_9() -> Outcome {
    let groups = corpus();
    let mut pairs = 0;
    for fam in &groups {
        let g = build(fam).map_err(e)?;
        let top = log_p(g.exponent(), g.p());
        let alg = GroupAlgebra::new(g);
        for n in 1..=top {
            let (kg, ka) = (
                kuelshammer_count_group(alg.group(), n),
                kuelshammer_count_algebra(&alg, n).map_err(e)?,
            );
            ensure(
                kg == ka,
                format!("{fam} n = {n}: power counts {kg} vs {ka}"),
            )?;
            let (pg, pa) = (
                pm_count_group(alg.group(), n),
                pm_count_algebra(&alg, n).map_err(e)?,
            );
            ensure(
                pg == pa,
                format!("{fam} n = {n}: class-sum counts {pg} vs {pa}"),
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{} groups, {pairs} (group, n) pairs", groups.len()))
}

fn criterion_10() -> Outcome {
    let g = Arc::new(build(&Family::MipG { n: 4, m: 3 }).map_err(e)?);
    let h = Arc::new(build(&Family::MipH { n: 4, m: 3 }).map_err(e)?);
    let r = compare(
        &GroupAlgebra::new(Arc::clone(&g)),
        &GroupAlgebra::new(Arc::clone(&h)),
        Caps::default(),
    )
    .map_err(e)?;
    ensure(
        r.verdict == Verdict::Indistinguishable,
        format!("fingerprints differ: {:?}", r.differing_fields),
    )?;
    let (rg, rh) = (rational_class_count(&g), rational_class_count(&h));
    ensure(rg != rh, format!("cyclic subgroup classes agree: {rg}"))?;
    let (dg, dh) = (descriptors(&g).map_err(e)?, descriptors(&h).map_err(e)?);
    let (eg, eh) = (
        dg.derived_centralizer_exponent,
        dh.derived_centralizer_exponent,
    );
    ensure(eg != eh, format!("exponents of C(G') agree: {eg}"))?;
    Ok(format!(
        "fingerprints equal; cyclic subgroup classes {rg} vs {rh}; exp C_G(G') {eg} vs {eh}"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("counterexample certificate for (4,3)", criterion_1),
        ("mutated generator is rejected", criterion_2),
        ("group bases of F_3[C_3]", criterion_3),
        ("kernel sizes of Q8 and D8", criterion_4),
        ("dimension subgroups both ways", criterion_5),
        ("Zassenhaus ideals", criterion_6),
        ("ideal J of F_2[D_16]", criterion_7),
        ("complement of L_2 in F_2[D_8]", criterion_8),
        ("power and class-sum counts both ways", criterion_9),
        ("rational and centralizer consequences", criterion_10),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("criterion {:>2} PASS {name}: {detail}", k + 1),
            Ok(Err(reason)) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {reason}", k + 1);
            }
            Err(_) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: panicked", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
