//! Singular vectors of `M(3/2, h_{1,q})` at level `q/2`: the closed-form
//! coefficient sum over odd compositions, and the Gram-kernel vector that
//! everything downstream uses.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

use crate::ns::{degenerate_weight, Mode, PBWWord, VermaElement, VermaModule};
use crate::scalar::{int, rat, HalfInt, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingvecError {
    #[error("label {0} must be an odd positive integer")]
    InvalidLabel(i64),
    #[error("kernel at level {q}/2 has dimension {dim}, expected 1")]
    KernelDimensionUnexpected { q: u32, dim: usize },
    #[error("singular vector at level {q}/2 is not null for the Shapovalov form")]
    NotNull { q: u32 },
}

fn check_label(q: u32) -> Result<(), SingvecError> {
    if q % 2 == 1 {
        Ok(())
    } else {
        Err(SingvecError::InvalidLabel(i64::from(q)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OddComposition {
    pub parts: Vec<u32>,
}

impl OddComposition {
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// All ordered sequences of odd positive parts summing to `q`, lexicographic.
pub fn odd_compositions(q: u32) -> Vec<OddComposition> {
    fn go(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<OddComposition>) {
        if rest == 0 {
            out.push(OddComposition {
                parts: prefix.clone(),
            });
            return;
        }
        for k in (1..=rest).step_by(2) {
            prefix.push(k);
            go(rest - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(q, &mut Vec::new(), &mut out);
    out
}

/// `(-1)^((q-N)/2) prod C(k_i - 1, (k_i - 1)/2) prod_j 4 / (sigma_{2j} rho_{2j})`,
/// with `sigma` the prefix sums and `rho` the suffix sums of the parts.
pub fn bsa_coefficient(comp: &OddComposition) -> Rational {
    let q = comp.total() as usize;
    let n = comp.parts.len();
    let mut c = if ((q - n) / 2).is_multiple_of(2) { int(1) } else { int(-1) };
    for &k in &comp.parts {
        let k = BigInt::from(k - 1);
        let two = BigInt::from(2);
        c *= Rational::from_integer(binomial(k.clone(), &k / two));
    }
    for j in 1..=(n - 1) / 2 {
        // 1-based index 2j
        let sigma: u32 = comp.parts[..2 * j].iter().sum();
        let rho: u32 = comp.parts[2 * j - 1..].iter().sum();
        c *= rat(4, i64::from(sigma) * i64::from(rho));
    }
    c
}

/// `prod_v (multiplicity of v)!`: how many permutations of the parts give
/// this same sequence.
pub fn permutation_multiplicity(comp: &OddComposition) -> u64 {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &k in &comp.parts {
        *counts.entry(k).or_default() += 1;
    }
    counts.values().map(|&m| (1..=m).product::<u64>()).product()
}

pub fn module_for(q: u32) -> VermaModule<Rational> {
    VermaModule::new(rat(3, 2), degenerate_weight(i64::from(q)))
}

/// The coefficient sum, each composition `(k_1..k_N)` contributing
/// `G(-k_1/2)...G(-k_N/2) vac`, normal ordered, once per permutation of the
/// underlying partition.
pub fn bsa_vector(q: u32) -> Result<VermaElement<Rational>, SingvecError> {
    check_label(q)?;
    let module = module_for(q);
    Ok(bsa_vector_in(&module, q))
}

fn bsa_vector_in(module: &VermaModule<Rational>, q: u32) -> VermaElement<Rational> {
    let mut acc = module.element([]);
    for comp in odd_compositions(q) {
        let modes: Vec<Mode> = comp.parts.iter().map(|&k| Mode::g(-i64::from(k))).collect();
        let weight = bsa_coefficient(&comp) * int(permutation_multiplicity(&comp) as i64);
        let v = module.apply_modes(&modes, &module.vacuum());
        acc = acc.add(&v.scale(&weight));
    }
    acc
}

/// Scales so the largest word in word order has coefficient 1.
pub fn normalize(v: &VermaElement<Rational>) -> VermaElement<Rational> {
    match v.terms().values().next_back() {
        Some(top) => v.scale(&top.recip()),
        None => v.clone(),
    }
}

/// Solves `G(1/2) v = G(3/2) v = 0` at level `q/2`, then checks `v` is null
/// for the Shapovalov form. The annihilator system has small entries, unlike
/// the Gram matrix, so this stays cheap at high levels.
fn kernel_vector(module: &VermaModule<Rational>, q: u32) -> Result<VermaElement<Rational>, SingvecError> {
    let level = HalfInt::from_twice(i64::from(q));
    let space = module.singular_space(level);
    let [v] = space.as_slice() else {
        return Err(SingvecError::KernelDimensionUnexpected {
            q,
            dim: space.len(),
        });
    };
    if !module.is_null(v) {
        return Err(SingvecError::NotNull { q });
    }
    Ok(normalize(v))
}

/// The singular vector at level `q/2` of `M(3/2, h_{1,q})`, normalized.
pub fn singular_vector(q: u32) -> Result<VermaElement<Rational>, SingvecError> {
    check_label(q)?;
    kernel_vector(&module_for(q), q)
}

/// Memoized [`singular_vector`] per label.
#[derive(Default)]
pub struct SingularVectors {
    cache: Mutex<BTreeMap<u32, Arc<VermaElement<Rational>>>>,
}

impl SingularVectors {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, q: u32) -> Result<Arc<VermaElement<Rational>>, SingvecError> {
        if let Some(v) = self.cache.lock().unwrap().get(&q) {
            return Ok(v.clone());
        }
        let v = Arc::new(singular_vector(q)?);
        self.cache.lock().unwrap().insert(q, v.clone());
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: String,
}

fn terms_json(v: &VermaElement<Rational>) -> Vec<TermJson> {
    v.terms()
        .iter()
        .map(|(w, k)| TermJson {
            coeff: k.to_string(),
            word: w.to_string(),
        })
        .collect()
}

/// Comparison of the coefficient sum against the kernel vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BsaReport {
    pub q: u32,
    pub proportional: bool,
    /// `bsa = ratio * kernel` when proportional.
    pub ratio: Option<String>,
    pub bsa_terms: Vec<TermJson>,
    pub kernel_terms: Vec<TermJson>,
    /// `G(1/2) bsa`, empty when it vanishes.
    pub residual_g_half: Vec<TermJson>,
    /// `G(3/2) bsa`.
    pub residual_g_three_halves: Vec<TermJson>,
}

pub fn bsa_validate(q: u32) -> Result<BsaReport, SingvecError> {
    check_label(q)?;
    let module = module_for(q);
    let bsa = bsa_vector_in(&module, q);
    let kernel = kernel_vector(&module, q)?;
    let ratio = proportionality(&bsa, &kernel);
    Ok(BsaReport {
        q,
        proportional: ratio.is_some(),
        ratio: ratio.map(|r| r.to_string()),
        bsa_terms: terms_json(&bsa),
        kernel_terms: terms_json(&kernel),
        residual_g_half: terms_json(&module.apply_mode(Mode::g(1), &bsa)),
        residual_g_three_halves: terms_json(&module.apply_mode(Mode::g(3), &bsa)),
    })
}

/// `Some(r)` with `a = r b`, `r != 0`.
pub fn proportionality(a: &VermaElement<Rational>, b: &VermaElement<Rational>) -> Option<Rational> {
    let (w, bk) = b.terms().iter().next()?;
    let r = a.coeff(w) / bk;
    (!Ring::is_zero(&r) && &b.scale(&r) == a).then_some(r)
}

/// Golden-file rendering of the word list `G(-r1)...L(-n1)...`.
pub fn word_label(w: &PBWWord) -> String {
    w.to_string()
}
