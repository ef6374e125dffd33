//! Zhu-bimodule classes of `M(3/2, h_{1,q})` tensored with the top level of
//! `L(3/2, h_{1,r})`, and the fusion polynomials `Q1`, `Q2`.
//!
//! A class is `P0(x) [v] + P1(x) [G(-1/2) v]` with `y` fixed to `h_{1,r}`.
//! Reduction goes leftmost first:
//!
//! * `[L(-n) u] = (n y - x + wt u) [u]`
//! * `[G(-r) G(-s) u] = (2s y - x + wt u) [u]`
//! * `[G(-r) L(-n) u] = (n y - x + wt u + n/2) [G(-1/2) u]`
//! * `[G(-r) v] = [G(-1/2) v]`

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::ns::{degenerate_weight, Mode, ModeKind, PBWWord, VermaElement};
use crate::scalar::{int, rat, Polynomial, Rational, Ring, Var};
use crate::singvec::{module_for, SingularVectors, SingvecError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZhuError {
    #[error("reduction of {what} for q={q}, r={r} mixes even and odd classes")]
    Impurity { q: u32, r: u32, what: &'static str },
    #[error("both fusion polynomials vanish at h_(1,{s}) for q={q}, r={r}")]
    AmbiguousParity { q: u32, r: u32, s: i64 },
    #[error("parity needs q >= r, got q={q}, r={r}")]
    Orientation { q: u32, r: u32 },
    #[error(transparent)]
    Singvec(#[from] SingvecError),
}

/// `P0(x) [v] + P1(x) [G(-1/2) v]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleElement {
    pub q_label: u32,
    pub y_value: Rational,
    pub even_part: Polynomial<Rational>,
    pub odd_part: Polynomial<Rational>,
}

impl BimoduleElement {
    fn zero(q: u32, y: Rational) -> Self {
        BimoduleElement {
            q_label: q,
            y_value: y,
            even_part: Polynomial::zero(Var::X),
            odd_part: Polynomial::zero(Var::X),
        }
    }

    fn add_scaled(&mut self, other: &BimoduleElement, k: &Rational) {
        self.even_part = self.even_part.try_add(&other.even_part.scale(k)).expect("x");
        self.odd_part = self.odd_part.try_add(&other.odd_part.scale(k)).expect("x");
    }

    fn times(&self, p: &Polynomial<Rational>) -> Self {
        BimoduleElement {
            even_part: self.even_part.try_mul(p).expect("x"),
            odd_part: self.odd_part.try_mul(p).expect("x"),
            ..self.clone()
        }
    }
}

/// `h_{1,s} = (s-1)^2/8`; labels `s` and `2-s` share a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightLabel {
    pub s: i64,
}

impl WeightLabel {
    pub fn new(s: i64) -> Self {
        WeightLabel { s }
    }

    pub fn value(self) -> Rational {
        degenerate_weight(self.s)
    }

    /// The representative `s >= 1`.
    pub fn canonical(self) -> WeightLabel {
        if self.s >= 1 {
            self
        } else {
            WeightLabel { s: 2 - self.s }
        }
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h(1,{})", self.s)
    }
}

/// `a y - x + b` as a polynomial in `x`.
fn linear(y: &Rational, a: Rational, b: Rational) -> Polynomial<Rational> {
    Polynomial::linear(Var::X, a * y + b, int(-1))
}

/// Class of `m_1 m_2 ... m_k v` for negative modes, with `y = y_value`.
pub fn zhu_reduce_modes(modes: &[Mode], q: u32, y: &Rational) -> BimoduleElement {
    let hq = degenerate_weight(i64::from(q));
    let wt = |rest: &[Mode]| -> Rational {
        rest.iter()
            .fold(hq.clone(), |acc, m| acc - m.index.to_rational())
    };
    let mut out = BimoduleElement::zero(q, y.clone());
    match modes {
        [] => out.even_part = Polynomial::one(Var::X),
        [m, rest @ ..] if m.kind == ModeKind::L => {
            let n = -m.index.to_rational();
            let p = linear(y, n, wt(rest));
            out = zhu_reduce_modes(rest, q, y).times(&p);
        }
        [_g] => out.odd_part = Polynomial::one(Var::X),
        [_g, second, rest @ ..] if second.kind == ModeKind::G => {
            let two_s = -second.index.to_rational() * int(2);
            let p = linear(y, two_s, wt(rest));
            out = zhu_reduce_modes(rest, q, y).times(&p);
        }
        [_g, second, rest @ ..] => {
            let n = -second.index.to_rational();
            let half_n = &n * rat(1, 2);
            let p = linear(y, n, wt(rest) + half_n);
            let mut shifted = Vec::with_capacity(rest.len() + 1);
            shifted.push(Mode::g(-1));
            shifted.extend_from_slice(rest);
            out = zhu_reduce_modes(&shifted, q, y).times(&p);
        }
    }
    out
}

pub fn zhu_reduce(w: &PBWWord, q: u32, y: &Rational) -> BimoduleElement {
    let modes: Vec<Mode> = w.modes().collect();
    zhu_reduce_modes(&modes, q, y)
}

pub fn reduce_element(v: &VermaElement<Rational>, q: u32, y: &Rational) -> BimoduleElement {
    let mut acc = BimoduleElement::zero(q, y.clone());
    for (w, k) in v.terms() {
        acc.add_scaled(&zhu_reduce(w, q, y), k);
    }
    acc
}

/// `Q1` and `Q2` for a pair of labels.
#[derive(Clone, Debug, PartialEq)]
pub struct QPolynomials {
    pub q: u32,
    pub r: u32,
    /// Odd-class coefficient of the singular vector.
    pub q1: Polynomial<Rational>,
    /// Even-class coefficient of `G(-1/2)` times the singular vector.
    pub q2: Polynomial<Rational>,
}

fn q_polys_from(q: u32, r: u32, sv: &VermaElement<Rational>) -> Result<QPolynomials, ZhuError> {
    let y = degenerate_weight(i64::from(r));
    let first = reduce_element(sv, q, &y);
    if !first.even_part.is_zero() {
        return Err(ZhuError::Impurity {
            q,
            r,
            what: "the singular vector",
        });
    }
    let lifted = module_for(q).apply_mode(Mode::g(-1), sv);
    let second = reduce_element(&lifted, q, &y);
    if !second.odd_part.is_zero() {
        return Err(ZhuError::Impurity {
            q,
            r,
            what: "G(-1/2) times the singular vector",
        });
    }
    Ok(QPolynomials {
        q,
        r,
        q1: first.odd_part,
        q2: second.even_part,
    })
}

pub fn q_polynomials(q: u32, r: u32) -> Result<QPolynomials, ZhuError> {
    let sv = crate::singvec::singular_vector(q)?;
    q_polys_from(q, r, &sv)
}

/// Roots of a polynomial among the weights `h_{1,s}`, `s` odd with `|s| <= bound`,
/// one entry per distinct weight labelled by its representative `s >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootAudit {
    /// `(s, multiplicity)`, ascending in `s`.
    pub roots: Vec<(i64, usize)>,
    pub degree: usize,
    /// Whether the multiplicities add up to the degree.
    pub complete: bool,
}

pub fn candidate_roots(p: &Polynomial<Rational>, bound: i64) -> RootAudit {
    let mut roots = Vec::new();
    let mut s = 1;
    while s <= bound.max(1) + 1 {
        if let Some(m) = p.root_multiplicity(&degenerate_weight(s)) {
            if m > 0 {
                roots.push((s, m));
            }
        }
        s += 2;
    }
    let degree = p.degree().unwrap_or(0);
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    RootAudit {
        roots,
        degree,
        complete: total == degree,
    }
}

/// Shared cache of singular vectors and `Q` polynomials.
#[derive(Default)]
pub struct ZhuTables {
    vectors: SingularVectors,
    polys: Mutex<BTreeMap<(u32, u32), Arc<QPolynomials>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Zero,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Zero => "zero",
        };
        f.write_str(s)
    }
}

fn odd_label(n: u32) -> Result<(), ZhuError> {
    if n % 2 == 1 {
        Ok(())
    } else {
        Err(SingvecError::InvalidLabel(i64::from(n)).into())
    }
}

impl ZhuTables {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vectors(&self) -> &SingularVectors {
        &self.vectors
    }

    pub fn q_polynomials(&self, q: u32, r: u32) -> Result<Arc<QPolynomials>, ZhuError> {
        odd_label(q)?;
        odd_label(r)?;
        if let Some(p) = self.polys.lock().unwrap().get(&(q, r)) {
            return Ok(p.clone());
        }
        let sv = self.vectors.get(q)?;
        let p = Arc::new(q_polys_from(q, r, &sv)?);
        self.polys.lock().unwrap().insert((q, r), p.clone());
        Ok(p)
    }

    /// 1 iff `Q1` or `Q2` vanishes at `h_{1,s}`.
    pub fn verma_fusion_dim(&self, q: u32, r: u32, s: i64) -> Result<u8, ZhuError> {
        let p = self.q_polynomials(q, r)?;
        let h = degenerate_weight(s);
        Ok(u8::from(p.q1.eval(&h).is_zero() || p.q2.eval(&h).is_zero()))
    }

    pub fn irreducible_fusion_dim(&self, q: u32, r: u32, s: i64) -> Result<u8, ZhuError> {
        Ok(self.verma_fusion_dim(q, r, s)? & self.verma_fusion_dim(r, q, s)?)
    }

    /// Even when `h_{1,s}` is a root of `Q2`, odd when a root of `Q1`, the
    /// polynomials taken from the singular vector of the smaller label `r`.
    pub fn fusion_parity(&self, q: u32, r: u32, s: i64) -> Result<Parity, ZhuError> {
        if q < r {
            return Err(ZhuError::Orientation { q, r });
        }
        if self.irreducible_fusion_dim(q, r, s)? == 0 {
            return Ok(Parity::Zero);
        }
        let p = self.q_polynomials(r, q)?;
        let h = degenerate_weight(s);
        match (p.q2.eval(&h).is_zero(), p.q1.eval(&h).is_zero()) {
            (true, true) => Err(ZhuError::AmbiguousParity { q, r, s }),
            (true, false) => Ok(Parity::Even),
            (false, true) => Ok(Parity::Odd),
            (false, false) => unreachable!("fusion dimension is nonzero"),
        }
    }

    /// Whether `Q1(q, r)`, `Q2(q, r)` split completely over the `h_{1,s}` with
    /// root multisets equal to [`predicted_root_labels`]`(a, b)`.
    pub fn roots_match(&self, q: u32, r: u32, a: u32, b: u32) -> Result<bool, ZhuError> {
        let p = self.q_polynomials(q, r)?;
        let bound = i64::from(q + r + 1);
        let (a1, a2) = (candidate_roots(&p.q1, bound), candidate_roots(&p.q2, bound));
        let (even, odd) = predicted_root_labels(a, b);
        Ok(a1.complete && a2.complete && root_multiset(&a2) == even && root_multiset(&a1) == odd)
    }

    /// Labels `s` (odd, `1 <= s <= q + r + 1`) with nonzero irreducible fusion dimension.
    pub fn fusion_support(&self, q: u32, r: u32) -> Result<Vec<i64>, ZhuError> {
        let mut out = Vec::new();
        for s in (1..=i64::from(q + r + 1)).step_by(2) {
            if self.irreducible_fusion_dim(q, r, s)? == 1 {
                out.push(s);
            }
        }
        Ok(out)
    }
}

pub fn verma_fusion_dim(q: u32, r: u32, s: i64) -> Result<u8, ZhuError> {
    ZhuTables::new().verma_fusion_dim(q, r, s)
}

pub fn irreducible_fusion_dim(q: u32, r: u32, s: i64) -> Result<u8, ZhuError> {
    ZhuTables::new().irreducible_fusion_dim(q, r, s)
}

pub fn fusion_parity(q: u32, r: u32, s: i64) -> Result<Parity, ZhuError> {
    ZhuTables::new().fusion_parity(q, r, s)
}

/// Root labels `(even, odd)` for the pair `(q, r)`: `q+r-1, q+r-5, ...` down to
/// `q-r+1`, and `q+r-3, q+r-7, ...` down to `q-r+3`, each label replaced by
/// its representative `s >= 1` and sorted. Kept with multiplicity.
///
/// These are the roots of `Q2`, `Q1` computed from the singular vector of `r`
/// with `y = h_{1,q}`, i.e. of `q_polynomials(r, q)`.
pub fn predicted_root_labels(q: u32, r: u32) -> (Vec<i64>, Vec<i64>) {
    let (q, r) = (i64::from(q), i64::from(r));
    let run = |top: i64, bottom: i64| -> Vec<i64> {
        let mut v: Vec<i64> = (0..)
            .map(|k| top - 4 * k)
            .take_while(|&s| s >= bottom)
            .map(|s| WeightLabel::new(s).canonical().s)
            .collect();
        v.sort_unstable();
        v
    };
    (run(q + r - 1, q - r + 1), run(q + r - 3, q - r + 3))
}

/// Flattens a root audit into a sorted multiset of labels.
pub fn root_multiset(a: &RootAudit) -> Vec<i64> {
    a.roots
        .iter()
        .flat_map(|&(s, m)| std::iter::repeat_n(s, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[Rational]) -> Polynomial<Rational> {
        Polynomial::new(Var::X, c.to_vec())
    }

    #[test]
    fn single_word_examples() {
        let y = rat(7, 3);
        let g32 = PBWWord::new(vec![3], vec![]).unwrap();
        let r = zhu_reduce(&g32, 5, &y);
        assert!(r.even_part.is_zero());
        assert_eq!(r.odd_part, Polynomial::one(Var::X));

        // [G(-3/2) G(-1/2) v] = (y - x + h_q)[v] by the pair rule with s = 1/2
        let pair = PBWWord::new(vec![3, 1], vec![]).unwrap();
        let r = zhu_reduce(&pair, 3, &y);
        assert_eq!(r.even_part, poly(&[&y + rat(1, 2), int(-1)]));

        let r = zhu_reduce_modes(&[Mode::l(-1), Mode::g(-1)], 3, &y);
        assert!(r.even_part.is_zero());
        assert_eq!(r.odd_part, poly(&[&y + int(1), int(-1)]));
    }

    #[test]
    fn pair_rule_literal_form() {
        // [G(-1/2) G(-3/2) v] = (3y - x + h_q)[v]
        let y = rat(2, 1);
        let r = zhu_reduce_modes(&[Mode::g(-1), Mode::g(-3)], 3, &y);
        assert_eq!(r.even_part, poly(&[int(3) * &y + rat(1, 2), int(-1)]));
    }

    #[test]
    fn q_three_r_three() {
        let p = q_polynomials(3, 3).unwrap();
        assert!(p.q1.proportional(&poly(&[rat(1, 2), int(-1)])));
        assert!(p.q2.proportional(&poly(&[int(0), int(-2), int(1)])));
    }

    #[test]
    fn q_three_r_five() {
        let p = q_polynomials(3, 5).unwrap();
        assert_eq!(candidate_roots(&p.q1, 9).roots, vec![(5, 1)]);
        assert_eq!(candidate_roots(&p.q2, 9).roots, vec![(3, 1), (7, 1)]);
    }

    #[test]
    fn vacuum_label() {
        let t = ZhuTables::new();
        for r in [1u32, 3, 5] {
            for s in (1..12).step_by(2) {
                assert_eq!(t.verma_fusion_dim(1, r, s).unwrap(), u8::from(s == i64::from(r)));
                assert_eq!(t.irreducible_fusion_dim(r, 1, s).unwrap(), u8::from(s == i64::from(r)));
            }
            assert_eq!(t.fusion_parity(r, 1, i64::from(r)).unwrap(), Parity::Even);
        }
    }

    #[test]
    fn small_fusion_rules() {
        let t = ZhuTables::new();
        assert_eq!(t.verma_fusion_dim(3, 3, 5).unwrap(), 1);
        assert_eq!(t.verma_fusion_dim(3, 3, 7).unwrap(), 0);
        assert_eq!(t.fusion_support(3, 3).unwrap(), vec![1, 3, 5]);
        assert_eq!(t.fusion_support(5, 3).unwrap(), vec![3, 5, 7]);
        assert_eq!(t.fusion_parity(3, 3, 5).unwrap(), Parity::Even);
        assert_eq!(t.fusion_parity(3, 3, 3).unwrap(), Parity::Odd);
        assert_eq!(t.fusion_parity(3, 3, 1).unwrap(), Parity::Even);
        assert_eq!(t.fusion_parity(5, 3, 5).unwrap(), Parity::Odd);
        assert_eq!(t.fusion_parity(5, 3, 9).unwrap(), Parity::Zero);
        assert!(matches!(t.fusion_parity(3, 5, 5), Err(ZhuError::Orientation { .. })));
    }

    #[test]
    fn root_sets_and_degrees() {
        let t = ZhuTables::new();
        for q in (1..=9u32).step_by(2) {
            for r in (1..=9u32).step_by(2) {
                let p = t.q_polynomials(r, q).unwrap();
                let bound = i64::from(q + r + 1);
                let (a1, a2) = (candidate_roots(&p.q1, bound), candidate_roots(&p.q2, bound));
                assert!(a1.complete && a2.complete, "{q} {r}");
                assert_eq!(a1.degree + a2.degree, r as usize);
                let (even, odd) = predicted_root_labels(q, r);
                assert_eq!(root_multiset(&a2), even, "Q2 {q} {r}");
                assert_eq!(root_multiset(&a1), odd, "Q1 {q} {r}");
            }
        }
    }

    #[test]
    fn parity_agrees_in_both_orientations() {
        let t = ZhuTables::new();
        for q in (1..=9u32).step_by(2) {
            for r in (1..=q).step_by(2) {
                let swapped = t.q_polynomials(q, r).unwrap();
                for s in t.fusion_support(q, r).unwrap() {
                    let h = degenerate_weight(s);
                    let even = swapped.q2.eval(&h).is_zero();
                    let odd = swapped.q1.eval(&h).is_zero();
                    let expect = if even { Parity::Even } else { Parity::Odd };
                    assert!(even != odd);
                    assert_eq!(t.fusion_parity(q, r, s).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn weight_label_reflection() {
        for s in -9..10 {
            let w = WeightLabel::new(s);
            assert_eq!(w.value(), WeightLabel::new(2 - s).value());
            assert!(w.canonical().s >= 1);
            assert_eq!(w.canonical().value(), w.value());
        }
    }

    fn negative_mode() -> impl Strategy<Value = Mode> {
        prop_oneof![
            (1i64..4).prop_map(|n| Mode::l(-n)),
            (0i64..3).prop_map(|k| Mode::g(-(2 * k + 1))),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        /// The class of `m_1 ... m_k v` does not depend on normal ordering.
        #[test]
        fn reduction_is_well_defined(
            modes in prop::collection::vec(negative_mode(), 0..5),
            q in prop::sample::select(vec![1u32, 3, 5]),
            yn in -6i64..7,
        ) {
            let y = rat(yn, 4);
            let module = module_for(q);
            let direct = zhu_reduce_modes(&modes, q, &y);
            let ordered = module.apply_modes(&modes, &module.vacuum());
            prop_assert_eq!(reduce_element(&ordered, q, &y), direct);
        }
    }
}
