//! Acceptance criteria 1 to 11, one line each. Runs without the libtest
//! harness so the lines always print; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use nsfusion::cli::expected_support;
use nsfusion::density::{matches_zhu, project_with};
use nsfusion::fusion::{odd_labels, verify_isomorphism, verify_ring_axioms, FusionRing};
use nsfusion::linalg::determinant;
use nsfusion::ns::{reducibility_locus, shapovalov_matrix, Mode, PBWWord};
use nsfusion::osp::{grothendieck_product, tensor_decompose, verify_relations, OspIrrep};
use nsfusion::scalar::{int, rat, HalfInt, Radical, Rational};
use nsfusion::singvec::{bsa_validate, module_for, proportionality, singular_vector};
use nsfusion::zhu::{Parity, ZhuTables};

struct Outcome {
    passed: bool,
    note: String,
}

fn outcome(passed: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        note: note.into(),
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn pairs(max: u32) -> Vec<(u32, u32)> {
    let l = odd_labels(max);
    l.iter().flat_map(|&q| l.iter().map(move |&r| (q, r))).collect()
}

fn spins() -> Vec<HalfInt> {
    (0..=5).map(HalfInt::from_twice).collect()
}

fn osp_relations() -> Outcome {
    let start = Instant::now();
    let bad: Vec<String> = spins()
        .into_iter()
        .filter(|&j| !verify_relations(j).is_empty())
        .map(|j| j.to_string())
        .collect();
    let t = start.elapsed();
    outcome(
        bad.is_empty() && within(t, 1),
        format!("relations on V(j), 2j <= 5, failing j: {bad:?}, {t:.2?}"),
    )
}

fn clebsch_gordan() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for &a in &spins() {
        for &b in &spins() {
            let closed = grothendieck_product(a, b);
            let dims: usize = closed.iter().map(|&k| OspIrrep::new(k).dim()).sum();
            let ok = tensor_decompose(a, b).is_ok_and(|d| d == closed)
                && dims == OspIrrep::new(a).dim() * OspIrrep::new(b).dim();
            if !ok {
                bad.push(format!("({a}, {b})"));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && within(t, 10),
        format!("tensor products vs closed form, failing: {bad:?}, {t:.2?}"),
    )
}

fn singular_vectors() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for q in odd_labels(9) {
        let m = module_for(q);
        let level = HalfInt::from_twice(i64::from(q));
        let kernel = m.gram_kernel(level);
        let ok = match kernel.as_slice() {
            [k] => {
                let v = &k.element;
                let weight = degenerate_weight(q) + level.to_rational();
                m.apply_mode(Mode::g(1), v).is_zero()
                    && m.apply_mode(Mode::g(3), v).is_zero()
                    && weight == rat(i64::from((q + 1) * (q + 1)), 8)
            }
            _ => false,
        };
        if !ok {
            bad.push(format!("q = {q} (kernel dimension {})", kernel.len()));
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && within(t, 60),
        format!("one-dimensional null kernels for q <= 9, failing: {bad:?}, {t:.2?}"),
    )
}

fn degenerate_weight(q: u32) -> Rational {
    let q = i64::from(q);
    rat((q - 1) * (q - 1), 8)
}

fn small_case() -> Outcome {
    let v = singular_vector(3).unwrap();
    let m = module_for(3);
    let expected = m.element([
        (PBWWord::new(vec![1], vec![1]).unwrap(), int(1)),
        (PBWWord::new(vec![3], vec![]).unwrap(), int(-1)),
    ]);
    let vector_ok = proportionality(&v, &expected).is_some();
    let det_ok = (-8..9).all(|n| {
        let h = rat(n, 3);
        let d = determinant(&shapovalov_matrix(rat(3, 2), h.clone(), HalfInt::from_twice(3))).unwrap();
        d == int(8) * &h * (&h - rat(1, 2)) * (&h - rat(1, 2))
    });
    outcome(
        vector_ok && det_ok,
        format!("singular_vector(3) = {}, det at level 3/2 = 8h(h-1/2)^2: {det_ok}", v.to_string().trim()),
    )
}

fn bsa_report() -> Outcome {
    let mut verdicts = Vec::new();
    let mut q1 = false;
    for q in odd_labels(9) {
        match bsa_validate(q) {
            Ok(r) => {
                if q == 1 {
                    q1 = r.proportional && r.ratio.as_deref() == Some("1");
                }
                verdicts.push(format!("{q}:{}", r.proportional));
            }
            Err(e) => verdicts.push(format!("{q}:error {e}")),
        }
    }
    let completed = verdicts.iter().all(|v| !v.contains("error"));
    outcome(
        completed && q1,
        format!("coefficient formula proportional to kernel vector: {}", verdicts.join(" ")),
    )
}

fn fusion_polynomials(t: &ZhuTables) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut literal_failures = 0;
    for (q, r) in pairs(9) {
        // the labels (q, r) of the root sets come from the singular vector of r at y = h_{1,q}
        if !t.roots_match(r, q, q, r).unwrap() {
            bad.push(format!("({q}, {r})"));
        }
        if !t.roots_match(q, r, q, r).unwrap() {
            literal_failures += 1;
        }
    }
    let time = start.elapsed();
    outcome(
        bad.is_empty() && within(time, 120),
        format!(
            "root sets of Q1, Q2 for 25 pairs, failing: {bad:?}; \
             with q as the singular-vector label {literal_failures} of 25 pairs differ; {time:.2?}"
        ),
    )
}

fn zhu_density(t: &ZhuTables) -> Outcome {
    let bad: Vec<String> = pairs(9)
        .into_iter()
        .filter(|&(q, r)| !matches_zhu(t, &project_with(t, q, r).unwrap()).unwrap())
        .map(|(q, r)| format!("({q}, {r})"))
        .collect();
    outcome(bad.is_empty(), format!("C1 ~ Q2 and C2 ~ Q1 for q, r <= 9, failing: {bad:?}"))
}

fn fusion_ring(ring: &FusionRing) -> Outcome {
    let mut bad = Vec::new();
    for (q, r) in pairs(9) {
        if ring.product(q, r).unwrap().labels() != expected_support(q, r) {
            bad.push(format!("b({q}) x b({r})"));
        }
        if q >= r {
            let labels = ring.parity(q, r).unwrap();
            let alternates = labels.iter().rev().enumerate().all(|(k, (_, p))| {
                *p == if k % 2 == 0 { Parity::Even } else { Parity::Odd }
            });
            if !alternates {
                bad.push(format!("parity of b({q}) x b({r})"));
            }
        }
    }
    outcome(bad.is_empty(), format!("products and parity for q, r <= 9, failing: {bad:?}"))
}

fn isomorphism() -> Outcome {
    let iso = verify_isomorphism(9).unwrap();
    let axioms = verify_ring_axioms(9).unwrap();
    outcome(iso && axioms, format!("isomorphism {iso}, ring axioms {axioms}"))
}

fn irrational_locus() -> Outcome {
    let s5 = Radical::sqrt_int(5);
    let c = Radical::from(rat(15, 2)) - s5.scale(&int(3));
    let h13 = s5.scale(&rat(1, 2)) - Radical::one();
    let h22 = h13.scale(&rat(3, 4));
    let pts = reducibility_locus(&c, HalfInt::from_int(3)).unwrap();
    let has = |h: &Radical| pts.iter().any(|p| &p.h == h);
    outcome(
        has(&h13) && has(&h22),
        format!("c = {c}: contains {h13} and {h22}"),
    )
}

fn run_cli(workers: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_nsfusion"))
        .args(["verify", "all", "--max", "9"])
        .env("NSFUSION_WORKERS", workers)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "verify all exited with {:?}", out.status);
    out.stdout
}

fn determinism() -> Outcome {
    let runs: Vec<Vec<u8>> = ["1", "1", "2", "8"].iter().map(|w| run_cli(w)).collect();
    let same = runs.windows(2).all(|w| w[0] == w[1]);
    outcome(
        same,
        format!("verify all --max 9 with 1, 1, 2, 8 workers: {} bytes each, identical {same}", runs[0].len()),
    )
}

fn main() {
    let tables = ZhuTables::new();
    let ring = FusionRing::new();
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "osp relation suite", Box::new(osp_relations)),
        (2, "Clebsch-Gordan", Box::new(clebsch_gordan)),
        (3, "singular vectors", Box::new(singular_vectors)),
        (4, "explicit small case", Box::new(small_case)),
        (5, "coefficient formula report", Box::new(bsa_report)),
        (6, "fusion polynomials", Box::new(|| fusion_polynomials(&tables))),
        (7, "Zhu-density cross-check", Box::new(|| zhu_density(&tables))),
        (8, "fusion ring", Box::new(|| fusion_ring(&ring))),
        (9, "ring isomorphism", Box::new(isomorphism)),
        (10, "irrational locus", Box::new(irrational_locus)),
        (11, "determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (n, name, check) in &criteria {
        let o = check();
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.note
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
