use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::mode::{bracket, Mode, ModeKind};
use super::pbw::PBWWord;
use super::NsError;
use crate::scalar::{HalfInt, Ring};

pub type Terms<S> = BTreeMap<PBWWord, S>;

fn add_into<S: Ring>(acc: &mut Terms<S>, w: PBWWord, c: S) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&w) {
        Some(v) => {
            let s = v.clone() + &c;
            if s.is_zero() {
                acc.remove(&w);
            } else {
                *v = s;
            }
        }
        None => {
            acc.insert(w, c);
        }
    }
}

fn add_scaled<S: Ring>(acc: &mut Terms<S>, src: &Terms<S>, k: &S) {
    for (w, c) in src {
        add_into(acc, w.clone(), c.clone() * k);
    }
}

/// A finite combination of PBW words applied to the highest-weight vector of
/// `M(c, h)`.
#[derive(Clone, PartialEq)]
pub struct VermaElement<S> {
    pub c: S,
    pub h: S,
    terms: Terms<S>,
}

impl<S: Ring> VermaElement<S> {
    pub fn zero(c: S, h: S) -> Self {
        VermaElement {
            c,
            h,
            terms: Terms::new(),
        }
    }

    pub fn vacuum(c: S, h: S) -> Self {
        Self::word(c, h, PBWWord::vacuum())
    }

    pub fn word(c: S, h: S, w: PBWWord) -> Self {
        Self::from_terms(c, h, [(w, S::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (PBWWord, S)>>(c: S, h: S, terms: I) -> Self {
        let mut t = Terms::new();
        for (w, k) in terms {
            add_into(&mut t, w, k);
        }
        VermaElement { c, h, terms: t }
    }

    pub fn terms(&self) -> &Terms<S> {
        &self.terms
    }

    pub fn coeff(&self, w: &PBWWord) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn levels(&self) -> BTreeSet<HalfInt> {
        self.terms.keys().map(PBWWord::level).collect()
    }

    /// The common level, `None` when the element is zero or mixes levels.
    pub fn level(&self) -> Option<HalfInt> {
        let l = self.levels();
        (l.len() == 1).then(|| *l.iter().next().unwrap())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.levels().len() <= 1
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(self.c.clone(), self.h.clone());
        add_scaled(&mut out.terms, &self.terms, k);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        add_scaled(&mut out.terms, &other.terms, &S::one());
        out
    }

    /// Golden-file text: one `coeff * word ;` line per term, in word order.
    pub fn golden_lines(&self) -> String {
        self.terms
            .iter()
            .map(|(w, k)| format!("{k} * {w} ;\n"))
            .collect()
    }
}

impl<S: fmt::Display> fmt::Display for VermaElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({k})*{w}")?;
        }
        Ok(())
    }
}

impl<S: fmt::Display> fmt::Debug for VermaElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `M(c, h)` with a memo of normal-ordered mode actions on words.
pub struct VermaModule<S> {
    c: S,
    h: S,
    memo: Mutex<HashMap<(Mode, PBWWord), Arc<Terms<S>>>>,
    pub(super) gram: Mutex<BTreeMap<HalfInt, Arc<crate::linalg::Matrix<S>>>>,
}

impl<S: Ring> VermaModule<S> {
    pub fn new(c: S, h: S) -> Self {
        VermaModule {
            c,
            h,
            memo: Mutex::new(HashMap::new()),
            gram: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn h(&self) -> &S {
        &self.h
    }

    pub fn vacuum(&self) -> VermaElement<S> {
        VermaElement::vacuum(self.c.clone(), self.h.clone())
    }

    pub fn element<I: IntoIterator<Item = (PBWWord, S)>>(&self, terms: I) -> VermaElement<S> {
        VermaElement::from_terms(self.c.clone(), self.h.clone(), terms)
    }

    pub fn apply_mode(&self, m: Mode, v: &VermaElement<S>) -> VermaElement<S> {
        VermaElement {
            c: self.c.clone(),
            h: self.h.clone(),
            terms: self.act_terms(m, &v.terms),
        }
    }

    /// Applies `m_1 m_2 ... m_k` (rightmost first).
    pub fn apply_modes(&self, modes: &[Mode], v: &VermaElement<S>) -> VermaElement<S> {
        modes.iter().rev().fold(v.clone(), |acc, &m| self.apply_mode(m, &acc))
    }

    pub(super) fn act_terms(&self, m: Mode, t: &Terms<S>) -> Terms<S> {
        let mut out = Terms::new();
        for (w, k) in t {
            let r = self.act_word(m, w);
            add_scaled(&mut out, &r, k);
        }
        out
    }

    pub(super) fn act_word(&self, x: Mode, w: &PBWWord) -> Arc<Terms<S>> {
        if x.kind == ModeKind::L && x.index == HalfInt::ZERO {
            let weight = self.h.clone() + &S::from_rational(w.level().to_rational());
            let mut t = Terms::new();
            add_into(&mut t, w.clone(), weight);
            return Arc::new(t);
        }
        if let Some(p) = w.try_prepend(x) {
            return Arc::new(Terms::from([(p, S::one())]));
        }
        let y = match w.leading() {
            Some(y) => y,
            // positive mode on the highest-weight vector
            None => return Arc::new(Terms::new()),
        };
        let key = (x, w.clone());
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let rest = w.tail();
        let result = if x.index.twice() < 0 && x == y && x.is_odd() {
            // G(-r) G(-r) = L(-2r)
            let l = Mode::new(ModeKind::L, x.index + x.index).unwrap();
            (*self.act_word(l, &rest)).clone()
        } else {
            let mut out = Terms::new();
            let xr = self.act_word(x, &rest);
            let swapped = self.act_terms(y, &xr);
            let eps = if x.is_odd() && y.is_odd() {
                -S::one()
            } else {
                S::one()
            };
            add_scaled(&mut out, &swapped, &eps);
            let b = bracket(x, y, &self.c);
            if let Some((coef, z)) = b.term {
                let zr = self.act_word(z, &rest);
                add_scaled(&mut out, &zr, &S::from_rational(coef));
            }
            add_into(&mut out, rest, b.central);
            out
        };
        let result = Arc::new(result);
        self.memo.lock().unwrap().insert(key, result.clone());
        result
    }

    /// True iff `G(1/2)` and `G(3/2)` both kill `v`.
    pub fn singular_verify(&self, v: &VermaElement<S>) -> Result<bool, NsError> {
        if !v.is_homogeneous() {
            return Err(NsError::NonHomogeneous {
                levels: v.levels().into_iter().collect(),
            });
        }
        Ok(self.apply_mode(Mode::g(1), v).is_zero() && self.apply_mode(Mode::g(3), v).is_zero())
    }
}

/// One-shot [`VermaModule::apply_mode`] using the element's own `(c, h)`.
pub fn apply_mode<S: Ring>(m: Mode, v: &VermaElement<S>) -> VermaElement<S> {
    VermaModule::new(v.c.clone(), v.h.clone()).apply_mode(m, v)
}

pub fn singular_verify<S: Ring>(v: &VermaElement<S>) -> Result<bool, NsError> {
    VermaModule::new(v.c.clone(), v.h.clone()).singular_verify(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns::pbw::pbw_basis;
    use crate::scalar::{int, rat, Rational};
    use proptest::prelude::*;

    fn w(g: &[u32], l: &[u32]) -> PBWWord {
        PBWWord::new(g.to_vec(), l.to_vec()).unwrap()
    }

    fn module(c: Rational, h: Rational) -> VermaModule<Rational> {
        VermaModule::new(c, h)
    }

    #[test]
    fn worked_examples() {
        let h = rat(2, 7);
        let m = module(rat(3, 2), h.clone());
        let g = m.element([(w(&[1], &[]), int(1))]);
        let r = m.apply_mode(Mode::g(1), &g);
        assert_eq!(r, m.vacuum().scale(&(int(2) * &h)));
        let l = m.element([(w(&[], &[1]), int(1))]);
        assert_eq!(m.apply_mode(Mode::l(1), &l), m.vacuum().scale(&(int(2) * &h)));
        assert_eq!(m.apply_mode(Mode::g(-1), &g), l);
    }

    #[test]
    fn reordering_g_modes() {
        let m = module(rat(3, 2), int(0));
        let v = m.element([(w(&[3], &[]), int(1))]);
        // G(-1/2)G(-3/2) = -G(-3/2)G(-1/2) + 2L(-2)
        let r = m.apply_mode(Mode::g(-1), &v);
        let expect = m.element([(w(&[3, 1], &[]), int(-1)), (w(&[], &[2]), int(2))]);
        assert_eq!(r, expect);
    }

    #[test]
    fn level_three_halves_singular_vector() {
        let m = module(rat(3, 2), rat(1, 2));
        let v = m.element([(w(&[1], &[1]), int(1)), (w(&[3], &[]), int(-1))]);
        assert_eq!(m.singular_verify(&v), Ok(true));
        let g = m.element([(w(&[1], &[]), int(1))]);
        assert_eq!(m.singular_verify(&g), Ok(false));
        assert_eq!(m.singular_verify(&m.vacuum()), Ok(true));
        let mixed = g.add(&m.vacuum());
        assert!(matches!(m.singular_verify(&mixed), Err(NsError::NonHomogeneous { .. })));
    }

    fn all_modes() -> Vec<Mode> {
        let mut v = Vec::new();
        for n in -3..=3 {
            v.push(Mode::l(n));
        }
        for t in [-5, -3, -1, 1, 3, 5] {
            v.push(Mode::g(t));
        }
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// `a b - eps b a = [a, b}` as operators on random words.
        #[test]
        fn super_jacobi_as_operators(
            ai in 0usize..13, bi in 0usize..13, ci in 0usize..13,
            level in 0i64..7, pick in 0usize..64,
            hn in -5i64..6,
        ) {
            let modes = all_modes();
            let (a, b, d) = (modes[ai], modes[bi], modes[ci]);
            let m = module(rat(3, 2), rat(hn, 3));
            let basis = pbw_basis(HalfInt::from_twice(level));
            let word = basis[pick % basis.len()].clone();
            let v = m.element([(word, int(1))]);
            let eps = if a.is_odd() && b.is_odd() { int(-1) } else { int(1) };
            let ab = m.apply_modes(&[a, b], &v);
            let ba = m.apply_modes(&[b, a], &v).scale(&eps);
            let lhs = ab.add(&ba.scale(&int(-1)));
            let br = bracket(a, b, m.c());
            let mut rhs = v.scale(&br.central);
            if let Some((k, z)) = br.term {
                rhs = rhs.add(&m.apply_mode(z, &v).scale(&k));
            }
            prop_assert_eq!(lhs, rhs);

            // grading
            let r = m.apply_mode(d, &v);
            if let Some(l) = r.level() {
                prop_assert_eq!(l, HalfInt::from_twice(level) - d.index);
            }
            let parities: BTreeSet<u8> = r.terms().keys().map(PBWWord::parity).collect();
            prop_assert!(parities.len() <= 1);
        }
    }
}
