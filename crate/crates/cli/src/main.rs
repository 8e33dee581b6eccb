//! Command-line front end for invariants, comparisons and certificates of
//! modular group algebras.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use modisom::algebra::{unit_closure, GroupAlgebra};
use modisom::families::{build_with_cap, Family};
use modisom::invariants::{compare, descriptors, fingerprint, Caps, Verdict};
use modisom::jennings::{graded_dims, jennings_basis};
use modisom::pgroup::{Group, PcPresentation, DEFAULT_ORDER_CAP};
use modisom::verify::{
    verify_counterexample, verify_d16_hs, verify_d8_complement, verify_kc3, Check,
    CounterexampleOptions, SecondGenerator,
};

#[derive(Parser)]
#[command(
    name = "modisom",
    version,
    about = "Modular group algebras of finite p-groups"
)]
struct Cli {
    /// Largest group order to build
    #[arg(long, global = true, env = "MODISOM_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
    /// Print the JSON report
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fingerprint of the group algebra
    Invariants {
        #[command(flatten)]
        group: GroupArgs,
        /// Also print group data that are not algebra invariants
        #[arg(long)]
        descriptors: bool,
    },
    /// Compare the fingerprints of two group algebras
    Compare {
        /// Group files or family specs such as `dihedral:8`
        #[arg(num_args = 0..=2)]
        groups: Vec<String>,
        /// Family names, used with --n and --m
        #[arg(long = "family")]
        families: Vec<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Run a certification pipeline
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Dimension subgroups and the Jennings basis
    Jennings {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Group of units generated by elements of the group algebra
    UnitsClosure {
        #[command(flatten)]
        group: GroupArgs,
        /// A generator as `c*i + ...` over element indices; repeatable
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Non-isomorphic groups with isomorphic group algebras over F_2
    Counterexample {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Drop c from the second generator; the checks must then fail
        #[arg(long)]
        mutate: bool,
        /// Skip the fingerprint comparison
        #[arg(long)]
        skip_invariants: bool,
    },
    /// Group bases of F_3[C_3]
    Kc3,
    /// The ideal J of F_2[D_16] and the unit group of its quotient
    D16Hs,
    /// The complement of L_2 in F_2[D_8]
    D8Complement,
}

#[derive(Args)]
struct GroupArgs {
    /// Group file or family spec such as `dihedral:8`
    group: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

/// `println!` that ignores a closed stdout.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

enum Failure {
    /// A distinguished comparison or a failed check
    Negative,
    Usage(String),
}

impl From<modisom::Error> for Failure {
    fn from(e: modisom::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn family_spec(name: &str, n: Option<u32>, m: Option<u32>) -> String {
    [
        Some(name.to_string()),
        n.map(|v| v.to_string()),
        m.map(|v| v.to_string()),
    ]
    .into_iter()
    .flatten()
    .collect::<Vec<_>>()
    .join(":")
}

fn load(source: &str, cap: usize) -> Result<Group, Failure> {
    let path = PathBuf::from(source);
    if path.is_file() {
        let text =
            std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
        let pres = PcPresentation::from_text(&text)
            .map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
        return Ok(Group::from_presentation_with_cap(pres, cap)?.with_name(source));
    }
    match source.parse::<Family>() {
        Ok(f) => Ok(build_with_cap(&f, cap)?.with_name(f.to_string())),
        Err(_) => Err(Failure::Usage(format!(
            "`{source}` is neither a readable file nor a family"
        ))),
    }
}

impl GroupArgs {
    fn group(&self, cap: usize) -> Result<Group, Failure> {
        match (&self.group, &self.family) {
            (Some(g), None) => load(g, cap),
            (None, Some(f)) => load(&family_spec(f, self.n, self.m), cap),
            _ => Err(Failure::Usage(
                "give either a group file/spec or --family".into(),
            )),
        }
    }
}

fn print_json(value: &Value) {
    say!(
        "{}",
        serde_json::to_string_pretty(value).expect("plain data")
    );
}

fn print_fields(value: &Value) {
    if let Value::Object(map) = value {
        for (k, v) in map {
            say!("{k}: {v}");
        }
    }
}

fn print_checks(title: &str, checks: &[Check]) {
    say!("{title}");
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            say!("  [{mark}] {}", c.name);
        } else {
            say!("  [{mark}] {} ({})", c.name, c.detail);
        }
    }
}

fn parse_element(text: &str, alg: &GroupAlgebra) -> Result<Vec<(u32, i64)>, Failure> {
    let order = alg.group().order() as u32;
    let bad = || Failure::Usage(format!("cannot parse generator `{text}`"));
    text.split('+')
        .map(|term| {
            let term = term.trim();
            let (c, i) = match term.split_once('*') {
                Some((c, i)) => (c.trim().parse::<i64>().map_err(|_| bad())?, i.trim()),
                None => (1, term),
            };
            let i: u32 = i.parse().map_err(|_| bad())?;
            if i >= order {
                return Err(Failure::Usage(format!("element index {i} out of range")));
            }
            Ok((i, c))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let caps = Caps {
        order: cli.cap,
        ..Caps::default()
    };
    match cli.command {
        Command::Invariants {
            group,
            descriptors: with_descriptors,
        } => {
            let g = group.group(cli.cap)?;
            let d = if with_descriptors {
                Some(descriptors(&g)?)
            } else {
                None
            };
            let f = fingerprint(&GroupAlgebra::new(g), caps)?;
            let fv = serde_json::to_value(&f).expect("plain data");
            let dv = d.map(|d| serde_json::to_value(d).expect("plain data"));
            match (cli.json, dv) {
                (true, None) => print_json(&fv),
                (true, Some(dv)) => print_json(&json!({ "fingerprint": fv, "descriptors": dv })),
                (false, dv) => {
                    print_fields(&fv);
                    if let Some(dv) = dv {
                        say!("\ndescriptors (not invariants of the group algebra):");
                        print_fields(&dv);
                    }
                }
            }
        }
        Command::Compare {
            groups,
            families,
            n,
            m,
        } => {
            let mut sources = groups;
            sources.extend(families.iter().map(|f| family_spec(f, n, m)));
            let [a, b] = sources.as_slice() else {
                return Err(Failure::Usage("compare needs exactly two groups".into()));
            };
            let ga = GroupAlgebra::new(load(a, cli.cap)?);
            let gb = GroupAlgebra::new(load(b, cli.cap)?);
            let report = compare(&ga, &gb, caps)?;
            if cli.json {
                print_json(&serde_json::to_value(&report).expect("plain data"));
            } else {
                match &report.verdict {
                    Verdict::Distinguished { field, left, right } => {
                        say!("distinguished by {field}");
                        say!("  {a}: {left}");
                        say!("  {b}: {right}");
                    }
                    Verdict::Indistinguishable => {
                        say!("indistinguishable by the implemented invariants")
                    }
                }
            }
            if report.is_distinguished() {
                return Err(Failure::Negative);
            }
        }
        Command::Verify { target } => {
            let (value, passed) = match target {
                VerifyTarget::Counterexample {
                    n,
                    m,
                    mutate,
                    skip_invariants,
                } => {
                    let opts = CounterexampleOptions {
                        cap: cli.cap,
                        second: if mutate {
                            SecondGenerator::WithoutC
                        } else {
                            SecondGenerator::Certified
                        },
                        compare_invariants: !skip_invariants,
                    };
                    let c = verify_counterexample(n, m, opts)?;
                    if !cli.json {
                        say!("G({n},{m}) and H({n},{m}), order 2^{}", n + m + 2);
                        print_checks("non-isomorphism", &c.nonisomorphism.checks);
                        print_checks(
                            &format!("group basis <a, {}>", c.group_basis.second_generator),
                            &c.group_basis.checks,
                        );
                        print_checks("proof identities", &c.proof_identities);
                        print_checks("control", std::slice::from_ref(&c.control));
                        say!(
                            "cyclic subgroup classes: G {} H {}",
                            c.rational_class_counts.0,
                            c.rational_class_counts.1
                        );
                        if let Some(r) = &c.invariant_report {
                            match &r.verdict {
                                Verdict::Indistinguishable => {
                                    say!("fingerprints: indistinguishable")
                                }
                                Verdict::Distinguished { field, .. } => {
                                    say!("fingerprints: differ in {field}")
                                }
                            }
                        }
                        say!("certificate {}", if c.valid { "valid" } else { "INVALID" });
                    }
                    (serde_json::to_value(&c).expect("plain data"), c.valid)
                }
                VerifyTarget::Kc3 => {
                    let r = verify_kc3()?;
                    if !cli.json {
                        print_checks("F_3[C_3]", &r.checks);
                    }
                    (serde_json::to_value(&r).expect("plain data"), r.passed)
                }
                VerifyTarget::D16Hs => {
                    let r = verify_d16_hs()?;
                    if !cli.json {
                        print_checks("F_2[D_16]", &r.checks);
                    }
                    (serde_json::to_value(&r).expect("plain data"), r.passed)
                }
                VerifyTarget::D8Complement => {
                    let r = verify_d8_complement()?;
                    if !cli.json {
                        print_checks("F_2[D_8]", &r.checks);
                    }
                    (serde_json::to_value(&r).expect("plain data"), r.passed)
                }
            };
            if cli.json {
                print_json(&value);
            }
            if !passed {
                return Err(Failure::Negative);
            }
        }
        Command::Jennings { group } => {
            let g = group.group(cli.cap)?;
            let series = g.dimension_subgroups()?;
            let alg = GroupAlgebra::new(g);
            let jd = jennings_basis(&alg)?;
            let value = json!({
                "dimension_subgroup_orders": series.terms().iter().map(|t| t.order()).collect::<Vec<_>>(),
                "layer_ranks": series.layer_ranks(alg.p()),
                "letters": jd.letters().iter().map(|l| json!({ "element": l.element, "weight": l.weight })).collect::<Vec<_>>(),
                "graded_dims": graded_dims(&alg),
                "nilpotency_index": alg.nilpotency_index(),
            });
            if cli.json {
                print_json(&value);
            } else {
                print_fields(&value);
            }
        }
        Command::UnitsClosure { group, gens } => {
            let alg = Arc::new(GroupAlgebra::new(group.group(cli.cap)?));
            let vectors = gens
                .iter()
                .map(|t| Ok(alg.from_terms(&parse_element(t, &alg)?).into_coeffs()))
                .collect::<Result<Vec<_>, Failure>>()?;
            let closure = unit_closure(alg.as_ref(), &vectors, cli.cap)?;
            let order = closure.order();
            let rank = closure.span_rank();
            let value = json!({
                "order": order,
                "span_rank": rank,
                "group_basis": order == alg.group().order() && rank == order,
            });
            if cli.json {
                print_json(&value);
            } else {
                print_fields(&value);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
