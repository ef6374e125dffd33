//! Command-line front end. Every command writes one document to stdout (or
//! `--output`), JSON by default, with `--format text` for a plain rendering.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a computation
//! errors (a JSON diagnostic goes to stderr), 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::density;
use crate::fusion::{isomorphism_failures, odd_labels, FusionRing};
use crate::ns::{pbw_basis, reducibility_locus, VermaModule};
use crate::osp::{grothendieck_product, tensor_decompose, verify_relations};
use crate::scalar::{HalfInt, Radical};
use crate::singvec::{bsa_validate, module_for, proportionality};
use crate::zhu::{candidate_roots, root_multiset, Parity};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "NSFUSION_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "nsfusion", version, about = "Exact fusion rules for the c = 3/2 Neveu-Schwarz minimal models")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// osp(1|2) modules.
    #[command(subcommand)]
    Osp(OspCmd),
    /// Neveu-Schwarz Verma modules.
    #[command(subcommand)]
    Ns(NsCmd),
    /// Singular vectors of M(3/2, h_{1,q}).
    #[command(subcommand)]
    Singvec(SingvecCmd),
    /// Zhu bimodule polynomials.
    #[command(subcommand)]
    Zhu(ZhuCmd),
    /// The fusion ring.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Super-density projection.
    #[command(subcommand)]
    Density(DensityCmd),
    /// Cross-check chains.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum OspCmd {
    /// Decompose V(j1) (x) V(j2).
    Tensor {
        #[arg(long, value_parser = parse_spin)]
        j1: HalfInt,
        #[arg(long, value_parser = parse_spin)]
        j2: HalfInt,
    },
    /// Check the bracket relations on V(j).
    Verify {
        #[arg(long, value_parser = parse_spin)]
        j: HalfInt,
    },
}

#[derive(Subcommand, Debug)]
pub enum NsCmd {
    /// Shapovalov matrix and its kernel at one level.
    Gram {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_radical)]
        c: Radical,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_radical)]
        h: Radical,
        #[arg(long, value_parser = parse_spin)]
        level: HalfInt,
    },
    /// Reducibility points h_{p,q} up to a level.
    Locus {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_radical)]
        c: Radical,
        #[arg(long, value_parser = parse_spin)]
        max_level: HalfInt,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct QArg {
    #[arg(long, value_parser = parse_odd)]
    pub q: u32,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct QrArgs {
    #[arg(long, value_parser = parse_odd)]
    pub q: u32,
    #[arg(long, value_parser = parse_odd)]
    pub r: u32,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct MaxArg {
    #[arg(long, value_parser = parse_odd)]
    pub max: u32,
}

#[derive(Subcommand, Debug)]
pub enum SingvecCmd {
    /// The singular vector at level q/2.
    Compute(QArg),
    /// Compare the coefficient formula with the computed vector.
    Validate(QArg),
}

#[derive(Subcommand, Debug)]
pub enum ZhuCmd {
    /// Q1 and Q2 for the singular vector of q at y = h_{1,r}.
    Qpoly(QrArgs),
}

#[derive(Subcommand, Debug)]
pub enum FusionCmd {
    /// Products b(q) x b(r) for all odd q, r up to --max.
    Table(MaxArg),
    /// Even/odd refinement of b(q) x b(r), q >= r.
    Parity(QrArgs),
}

#[derive(Subcommand, Debug)]
pub enum DensityCmd {
    /// Project the singular vector of q against h_{1,r}.
    Project(QrArgs),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Run every cross-check with labels up to --max.
    All(MaxArg),
}

fn parse_odd(s: &str) -> Result<u32, String> {
    let n: u32 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a positive integer"))?;
    if n.is_multiple_of(2) {
        return Err(format!("`{s}` must be odd"));
    }
    Ok(n)
}

fn parse_spin(s: &str) -> Result<HalfInt, String> {
    let j: HalfInt = s.parse().map_err(|e| format!("{e}"))?;
    if j.twice() < 0 {
        return Err(format!("`{s}` is negative"));
    }
    Ok(j)
}

fn parse_radical(s: &str) -> Result<Radical, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// What a command produced.
pub struct Outcome {
    pub json: Value,
    /// Plain rendering; pretty JSON when absent.
    pub text: Option<String>,
    /// Names of failed invariants.
    pub failures: Vec<String>,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome {
            json,
            text: None,
            failures: Vec::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Zhu(#[from] crate::zhu::ZhuError),
    #[error(transparent)]
    Singvec(#[from] crate::singvec::SingvecError),
    #[error(transparent)]
    Density(#[from] density::DensityError),
    #[error(transparent)]
    Ns(#[from] crate::ns::NsError),
    #[error(transparent)]
    Osp(#[from] crate::osp::OspError),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Osp(OspCmd::Tensor { j1, j2 }) => {
            let found = tensor_decompose(*j1, *j2)?;
            let closed = grothendieck_product(*j1, *j2);
            let matches = found == closed;
            let mut out = Outcome::ok(json!({
                "j1": j1.to_string(),
                "j2": j2.to_string(),
                "decomposition": strings(&found),
                "closed_form": strings(&closed),
                "matches": matches,
            }));
            if !matches {
                out.failures.push("osp.tensor".into());
            }
            Ok(out)
        }
        Command::Osp(OspCmd::Verify { j }) => {
            let violations = verify_relations(*j);
            let mut out = Outcome::ok(json!({ "j": j.to_string(), "violations": to_json(&violations) }));
            if !violations.is_empty() {
                out.failures.push("osp.relations".into());
            }
            Ok(out)
        }
        Command::Ns(NsCmd::Gram { c, h, level }) => Ok(gram(c, h, *level)),
        Command::Ns(NsCmd::Locus { c, max_level }) => {
            let points = reducibility_locus(c, *max_level)?;
            let text = points
                .iter()
                .map(|p| format!("p={} q={} t={} h={}\n", p.p, p.q, p.t, p.h))
                .collect();
            Ok(Outcome {
                json: json!({ "c": c.to_string(), "max_level": max_level.to_string(), "points": to_json(&points) }),
                text: Some(text),
                failures: Vec::new(),
            })
        }
        Command::Singvec(SingvecCmd::Compute(QArg { q })) => {
            let v = crate::singvec::singular_vector(*q)?;
            let terms: Vec<Value> = v
                .terms()
                .iter()
                .map(|(w, k)| json!({ "coeff": k.to_string(), "word": w.to_string() }))
                .collect();
            Ok(Outcome {
                json: json!({ "q": q, "level": HalfInt::from_twice(i64::from(*q)).to_string(), "terms": terms }),
                text: Some(v.golden_lines()),
                failures: Vec::new(),
            })
        }
        Command::Singvec(SingvecCmd::Validate(QArg { q })) => Ok(Outcome::ok(to_json(&bsa_validate(*q)?))),
        Command::Zhu(ZhuCmd::Qpoly(QrArgs { q, r })) => {
            let p = crate::zhu::q_polynomials(*q, *r)?;
            let bound = i64::from(q + r + 1);
            let (a1, a2) = (candidate_roots(&p.q1, bound), candidate_roots(&p.q2, bound));
            Ok(Outcome {
                json: json!({
                    "q": q,
                    "r": r,
                    "Q1": p.q1.to_string(),
                    "Q2": p.q2.to_string(),
                    "Q1_roots": root_multiset(&a1),
                    "Q2_roots": root_multiset(&a2),
                }),
                text: Some(format!("Q1 = {}\nQ2 = {}\n", p.q1, p.q2)),
                failures: Vec::new(),
            })
        }
        Command::Fusion(FusionCmd::Table(MaxArg { max })) => {
            let ring = FusionRing::new();
            let table = ring.table(*max)?;
            Ok(Outcome {
                json: to_json(&ring.table_json(&table)?),
                text: Some(table.to_text()),
                failures: Vec::new(),
            })
        }
        Command::Fusion(FusionCmd::Parity(QrArgs { q, r })) => {
            if q < r {
                return Err(CliError::Usage(format!("--q {q} must be at least --r {r}")));
            }
            let labels = FusionRing::new().parity(*q, *r)?;
            let entries: Vec<Value> = labels
                .iter()
                .map(|(s, p)| json!({ "s": s, "dim": 1, "parity": p }))
                .collect();
            Ok(Outcome::ok(json!({ "q": q, "r": r, "entries": entries })))
        }
        Command::Density(DensityCmd::Project(QrArgs { q, r })) => {
            let t = crate::zhu::ZhuTables::new();
            Ok(Outcome::ok(to_json(&density::report(&t, *q, *r)?)))
        }
        Command::Verify(VerifyCmd::All(MaxArg { max })) => verify_all(*max),
    }
}

fn gram(c: &Radical, h: &Radical, level: HalfInt) -> Outcome {
    let m = VermaModule::new(c.clone(), h.clone());
    let basis = pbw_basis(level);
    let matrix = m.shapovalov_matrix(level);
    let kernel = m.gram_kernel(level);
    let rows: Vec<Vec<String>> = matrix.iter().map(|r| strings(r)).collect();
    let kern: Vec<Value> = kernel
        .iter()
        .map(|k| {
            let terms: Vec<Value> = k
                .element
                .terms()
                .iter()
                .map(|(w, x)| json!({ "coeff": x.to_string(), "word": w.to_string() }))
                .collect();
            json!({ "terms": terms, "singular": k.singular })
        })
        .collect();
    let text = rows.iter().map(|r| r.join("\t") + "\n").collect();
    Outcome {
        json: json!({
            "c": c.to_string(),
            "h": h.to_string(),
            "level": level.to_string(),
            "basis": strings(&basis),
            "matrix": rows,
            "kernel_dim": kernel.len(),
            "kernel": kern,
        }),
        text: Some(text),
        failures: Vec::new(),
    }
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>) -> Self {
        Check {
            name,
            passed: failures.is_empty(),
            failures,
        }
    }
}

fn pairs(max: u32) -> Vec<(u32, u32)> {
    let labels = odd_labels(max);
    let mut out = Vec::new();
    for &q in &labels {
        for &r in &labels {
            out.push((q, r));
        }
    }
    out
}

/// Collects failure messages from a parallel map, keeping input order.
fn gather<T, F>(items: &[T], f: F) -> Result<Vec<String>, CliError>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>, CliError> + Sync,
{
    let found: Vec<Option<String>> = items.par_iter().map(&f).collect::<Result<_, _>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// The predicted support of `b(q) x b(r)`: `|q-r|+1, ..., q+r-1` in steps of 2.
pub fn expected_support(q: u32, r: u32) -> Vec<u32> {
    (q.abs_diff(r) + 1..=q + r - 1).step_by(2).collect()
}

pub fn verify_all(max: u32) -> Result<Outcome, CliError> {
    let spins: Vec<HalfInt> = (0..=5).map(HalfInt::from_twice).collect();
    let spin_pairs: Vec<(HalfInt, HalfInt)> = spins
        .iter()
        .flat_map(|&a| spins.iter().map(move |&b| (a, b)))
        .collect();
    let labels = odd_labels(max);
    let all_pairs = pairs(max);
    let ring = FusionRing::new();
    let tables = ring.tables();
    let mut checks = Vec::new();

    checks.push(Check::new(
        "osp.relations",
        gather(&spins, |&j| {
            let v = verify_relations(j);
            Ok((!v.is_empty()).then(|| format!("j = {j}: {} violations", v.len())))
        })?,
    ));
    checks.push(Check::new(
        "osp.tensor",
        gather(&spin_pairs, |&(a, b)| {
            let ok = tensor_decompose(a, b).is_ok_and(|d| d == grothendieck_product(a, b));
            Ok((!ok).then(|| format!("V({a}) x V({b})")))
        })?,
    ));
    checks.push(Check::new(
        "singvec.kernel",
        gather(&labels, |&q| {
            let level = HalfInt::from_twice(i64::from(q));
            let kernel = module_for(q).gram_kernel(level);
            let sv = tables.vectors().get(q)?;
            let ok = kernel.len() == 1
                && kernel[0].singular
                && proportionality(&kernel[0].element, &sv).is_some();
            Ok((!ok).then(|| format!("q = {q}: kernel dimension {}", kernel.len())))
        })?,
    ));
    let bsa: Vec<(u32, bool, Option<String>)> = labels
        .par_iter()
        .map(|&q| bsa_validate(q).map(|r| (q, r.proportional, r.ratio)))
        .collect::<Result<_, _>>()?;
    let bsa_failures = if bsa.first().is_some_and(|(_, p, ratio)| *p && ratio.as_deref() == Some("1")) {
        Vec::new()
    } else {
        vec!["q = 1 is not proportional with ratio 1".to_string()]
    };
    checks.push(Check::new("singvec.bsa", bsa_failures));
    checks.push(Check::new(
        "zhu.roots",
        gather(&all_pairs, |&(q, r)| {
            Ok((!tables.roots_match(r, q, q, r)?).then(|| format!("({q}, {r})")))
        })?,
    ));
    checks.push(Check::new(
        "density.zhu",
        gather(&all_pairs, |&(q, r)| {
            let p = density::project_with(tables, q, r)?;
            Ok((!density::matches_zhu(tables, &p)?).then(|| format!("({q}, {r})")))
        })?,
    ));
    checks.push(Check::new(
        "fusion.support",
        gather(&all_pairs, |&(q, r)| {
            let got = ring.product(q, r)?.labels();
            Ok((got != expected_support(q, r)).then(|| format!("b({q}) x b({r})")))
        })?,
    ));
    checks.push(Check::new(
        "fusion.parity",
        gather(&all_pairs, |&(q, r)| {
            if q < r {
                return Ok(None);
            }
            let labels = ring.parity(q, r)?;
            let ok = labels.iter().rev().enumerate().all(|(k, (_, p))| {
                *p == if k % 2 == 0 { Parity::Even } else { Parity::Odd }
            });
            Ok((!ok).then(|| format!("b({q}) x b({r})")))
        })?,
    ));
    let table = ring.table(max)?;
    checks.push(Check::new("fusion.isomorphism", isomorphism_failures(&table)));
    checks.push(Check::new("fusion.axioms", ring.verify_ring_axioms(max)?));

    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.to_string())
        .collect();
    let bsa_json: Vec<Value> = bsa
        .iter()
        .map(|(q, p, ratio)| json!({ "q": q, "proportional": p, "ratio": ratio }))
        .collect();
    let text = checks
        .iter()
        .map(|c| format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name))
        .collect();
    Ok(Outcome {
        json: json!({ "max": max, "checks": to_json(&checks), "bsa_report": bsa_json, "passed": failures.is_empty() }),
        text: Some(text),
        failures,
    })
}

fn render(cli: &Cli, out: &Outcome) -> String {
    match (cli.format, &out.text) {
        (Format::Text, Some(t)) => t.clone(),
        _ => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
    }
}

fn diagnostic(status: &str, detail: Value) {
    let d = json!({ "status": status, "detail": detail });
    eprintln!("{}", serde_json::to_string(&d).expect("json"));
}

/// Sizes the global thread pool from the environment, once.
pub fn configure_workers() {
    if let Some(n) = std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call finds the pool already built, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_workers();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(e) => {
            diagnostic("error", Value::String(e.to_string()));
            return 1;
        }
    };
    let body = render(&cli, &outcome);
    let written = match &cli.output {
        Some(path) => fs::write(path, &body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        diagnostic("error", Value::String(e.to_string()));
        return 1;
    }
    if outcome.failures.is_empty() {
        0
    } else {
        diagnostic("failed", json!({ "invariants": outcome.failures }));
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("nsfusion").chain(args.iter().copied()))
    }

    #[test]
    fn odd_labels_enforced_at_parse_time() {
        assert!(parse(&["singvec", "compute", "--q", "4"]).is_err());
        assert!(parse(&["singvec", "compute", "--q", "5"]).is_ok());
        assert!(parse(&["fusion", "table", "--max", "1.5"]).is_err());
    }

    #[test]
    fn radical_charges_parse() {
        let cli = parse(&["ns", "locus", "--c", "15/2-3*sqrt(5)", "--max-level", "3"]).unwrap();
        match cli.command {
            Command::Ns(NsCmd::Locus { c, .. }) => assert_eq!(c.radicands(), vec![5]),
            _ => panic!("wrong command"),
        }
        assert!(parse(&["ns", "locus", "--c", "1.5", "--max-level", "3"]).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["nsfusion", "osp", "verify", "--j", "1/2"]), 0);
        assert_eq!(run(["nsfusion", "osp", "verify", "--j", "1/3"]), 2);
        assert_eq!(run(["nsfusion", "fusion", "parity", "--q", "3", "--r", "5"]), 2);
        assert_eq!(run(["nsfusion", "nosuch"]), 2);
    }

    #[test]
    fn fusion_table_contains_three_times_three() {
        let cli = parse(&["fusion", "table", "--max", "5"]).unwrap();
        let out = execute(&cli).unwrap();
        let rows = out.json.as_array().unwrap();
        let row = rows.iter().find(|r| r["q"] == 3 && r["r"] == 3).unwrap();
        let s: Vec<u64> = row["entries"].as_array().unwrap().iter().map(|e| e["s"].as_u64().unwrap()).collect();
        assert_eq!(s, vec![1, 3, 5]);
    }

    #[test]
    fn locus_at_three_halves() {
        let cli = parse(&["ns", "locus", "--c", "3/2", "--max-level", "3"]).unwrap();
        let out = execute(&cli).unwrap();
        let pts = out.json["points"].as_array().unwrap();
        assert!(pts
            .iter()
            .any(|p| p["p"] == 1 && p["q"] == 3 && p["t"] == "-1" && p["h"] == "1/2"));
    }

    #[test]
    fn support_oracle() {
        assert_eq!(expected_support(3, 3), vec![1, 3, 5]);
        assert_eq!(expected_support(5, 3), vec![3, 5, 7]);
        assert_eq!(expected_support(1, 7), vec![7]);
    }
}
