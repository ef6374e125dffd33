use std::sync::Arc;

use super::pbw::{pbw_basis, PBWWord};
use super::verma::{VermaElement, VermaModule};
use super::mode::Mode;
use crate::linalg::{kernel, mat_vec, Matrix};
use crate::scalar::{HalfInt, Ring};

/// A null vector of the Shapovalov form and whether it is singular.
#[derive(Clone, PartialEq)]
pub struct KernelVector<S> {
    pub element: VermaElement<S>,
    pub singular: bool,
}

impl<S: std::fmt::Display> std::fmt::Debug for KernelVector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} (singular: {})", self.element, self.singular)
    }
}

impl<S: Ring> VermaModule<S> {
    /// Contravariant form on the given level, rows and columns in [`pbw_basis`] order.
    ///
    /// Built recursively: for `u = X u'` one has `<u, w> = <u', X^dagger w>`,
    /// and `X^dagger w` lives one step down where the form is already known.
    pub fn shapovalov_matrix(&self, level: HalfInt) -> Arc<Matrix<S>> {
        if let Some(g) = self.gram.lock().unwrap().get(&level) {
            return g.clone();
        }
        let basis = pbw_basis(level);
        let m = if level == HalfInt::ZERO {
            vec![vec![S::one()]]
        } else {
            let n = basis.len();
            let mut m: Matrix<S> = vec![vec![S::zero(); n]; n];
            for (i, u) in basis.iter().enumerate() {
                let x = u.leading().expect("positive level word is nonempty");
                let tail = u.tail();
                let lower_level = tail.level();
                let lower = self.shapovalov_matrix(lower_level);
                let lower_basis = pbw_basis(lower_level);
                let row = lower_basis
                    .binary_search(&tail)
                    .expect("tail is a basis word");
                for (j, w) in basis.iter().enumerate().skip(i) {
                    let down = self.act_word(x.adjoint(), w);
                    let mut s = S::zero();
                    for (w2, k) in down.iter() {
                        let col = lower_basis.binary_search(w2).expect("normal ordered");
                        let e = &lower[row][col];
                        if !e.is_zero() {
                            s = s + &(e.clone() * k);
                        }
                    }
                    m[i][j] = s.clone();
                    m[j][i] = s;
                }
            }
            m
        };
        let m = Arc::new(m);
        self.gram.lock().unwrap().insert(level, m.clone());
        m
    }

    /// Null space of the Shapovalov form as Verma elements, each flagged by
    /// [`VermaModule::singular_verify`].
    pub fn gram_kernel(&self, level: HalfInt) -> Vec<KernelVector<S>> {
        let basis = pbw_basis(level);
        let m = self.shapovalov_matrix(level);
        kernel(&m, basis.len())
            .into_iter()
            .map(|v| {
                let element = self.element(basis.iter().cloned().zip(v));
                let singular = self
                    .singular_verify(&element)
                    .expect("kernel vectors are homogeneous");
                KernelVector { element, singular }
            })
            .collect()
    }
}

impl<S: Ring> VermaModule<S> {
    /// Matrix of `v -> (G(1/2) v, G(3/2) v)` on the given level, columns in
    /// basis order, rows over the two lower bases stacked.
    pub fn annihilator_matrix(&self, level: HalfInt) -> Matrix<S> {
        let basis = pbw_basis(level);
        let mut rows = Vec::new();
        for mode in [Mode::g(1), Mode::g(3)] {
            let lower_level = level - mode.index;
            if lower_level.twice() < 0 {
                continue;
            }
            let lower = pbw_basis(lower_level);
            let mut block = vec![vec![S::zero(); basis.len()]; lower.len()];
            for (j, w) in basis.iter().enumerate() {
                for (w2, k) in self.act_word(mode, w).iter() {
                    let i = lower.binary_search(w2).expect("normal ordered");
                    block[i][j] = k.clone();
                }
            }
            rows.extend(block);
        }
        rows
    }

    /// Basis of the singular vectors on one level.
    pub fn singular_space(&self, level: HalfInt) -> Vec<VermaElement<S>> {
        let basis = pbw_basis(level);
        let a = self.annihilator_matrix(level);
        if a.is_empty() {
            // level 0: only the highest-weight vector
            return vec![self.vacuum()];
        }
        kernel(&a, basis.len())
            .into_iter()
            .map(|v| self.element(basis.iter().cloned().zip(v)))
            .collect()
    }

    /// Whether a homogeneous element pairs to zero with its whole level.
    pub fn is_null(&self, v: &VermaElement<S>) -> bool {
        let Some(level) = v.level() else {
            return v.is_zero();
        };
        let basis = pbw_basis(level);
        let coeffs: Vec<S> = basis.iter().map(|w| v.coeff(w)).collect();
        mat_vec(&self.shapovalov_matrix(level), &coeffs)
            .iter()
            .all(Ring::is_zero)
    }
}

pub fn shapovalov_matrix<S: Ring>(c: S, h: S, level: HalfInt) -> Matrix<S> {
    VermaModule::new(c, h).shapovalov_matrix(level).as_ref().clone()
}

pub fn gram_kernel<S: Ring>(c: S, h: S, level: HalfInt) -> Vec<KernelVector<S>> {
    VermaModule::new(c, h).gram_kernel(level)
}

/// Entry `(u, w)` straight from the definition: vacuum coefficient of `u^dagger w`.
pub fn shapovalov_entry<S: Ring>(module: &VermaModule<S>, u: &PBWWord, w: &PBWWord) -> S {
    let adj: Vec<_> = u.modes().map(|m| m.adjoint()).collect();
    // u = X1 X2 ... Xk, so u^dagger = Xk^dagger ... X1^dagger: apply X1^dagger first
    let v = module.element([(w.clone(), S::one())]);
    let r = adj
        .iter()
        .fold(v, |acc, &m| module.apply_mode(m, &acc));
    r.coeff(&PBWWord::vacuum())
}
