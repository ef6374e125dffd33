use std::fmt;

use crate::scalar::{int, rat, HalfInt, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeKind {
    G,
    L,
}

/// A Neveu-Schwarz generator `L(n)` (integer `n`) or `G(r)` (`r` in `Z + 1/2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub kind: ModeKind,
    pub index: HalfInt,
}

impl Mode {
    pub fn l(n: i64) -> Self {
        Mode {
            kind: ModeKind::L,
            index: HalfInt::from_int(n),
        }
    }

    /// `G(twice / 2)`; `twice` must be odd.
    pub fn g(twice: i64) -> Self {
        assert!(twice % 2 != 0, "G index must be half-odd, got {twice}/2");
        Mode {
            kind: ModeKind::G,
            index: HalfInt::from_twice(twice),
        }
    }

    pub fn new(kind: ModeKind, index: HalfInt) -> Option<Self> {
        let ok = match kind {
            ModeKind::L => index.is_integer(),
            ModeKind::G => !index.is_integer(),
        };
        ok.then_some(Mode { kind, index })
    }

    pub fn is_odd(self) -> bool {
        self.kind == ModeKind::G
    }

    /// `L(n)^dagger = L(-n)`, `G(r)^dagger = G(-r)`.
    pub fn adjoint(self) -> Self {
        Mode {
            kind: self.kind,
            index: -self.index,
        }
    }

    /// Sort key used for words: `G` before `L`, then by signed index.
    pub(crate) fn order_key(self) -> (ModeKind, i64) {
        (self.kind, self.index.twice())
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ModeKind::G => "G",
            ModeKind::L => "L",
        };
        write!(f, "{k}({})", self.index)
    }
}

/// Super bracket `[a, b}` as `coeff * mode + central`, central term already
/// multiplied by the central charge `c`.
pub struct Bracket<S> {
    pub term: Option<(Rational, Mode)>,
    pub central: S,
}

/// `[L_m, L_n] = (m-n) L_{m+n} + c/12 (m^3 - m) delta`,
/// `[L_m, G_r] = (m/2 - r) G_{m+r}`,
/// `{G_r, G_s} = 2 L_{r+s} + c/3 (r^2 - 1/4) delta`.
pub fn bracket<S: Ring>(a: Mode, b: Mode, c: &S) -> Bracket<S> {
    let m = a.index.to_rational();
    let n = b.index.to_rational();
    let sum = a.index + b.index;
    let on_diagonal = sum == HalfInt::ZERO;
    let mk = |coef: Rational, kind| {
        let mode = Mode::new(kind, sum).expect("bracket lands on a valid mode");
        (!num_traits::Zero::is_zero(&coef)).then_some((coef, mode))
    };
    match (a.kind, b.kind) {
        (ModeKind::L, ModeKind::L) => {
            let central = if on_diagonal {
                c.clone() * &S::from_rational((&m * &m * &m - &m) / int(12))
            } else {
                S::zero()
            };
            Bracket {
                term: mk(&m - &n, ModeKind::L),
                central,
            }
        }
        (ModeKind::L, ModeKind::G) => Bracket {
            term: mk(&m * rat(1, 2) - &n, ModeKind::G),
            central: S::zero(),
        },
        (ModeKind::G, ModeKind::L) => Bracket {
            term: mk(&m - &n * rat(1, 2), ModeKind::G),
            central: S::zero(),
        },
        (ModeKind::G, ModeKind::G) => {
            let central = if on_diagonal {
                c.clone() * &S::from_rational((&m * &m - rat(1, 4)) / int(3))
            } else {
                S::zero()
            };
            Bracket {
                term: mk(int(2), ModeKind::L),
                central,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_half_anticommutator() {
        let b = bracket::<Rational>(Mode::g(1), Mode::g(-1), &rat(3, 2));
        assert_eq!(b.term, Some((int(2), Mode::l(0))));
        assert_eq!(b.central, int(0));
    }

    #[test]
    fn virasoro_central_term() {
        // [L_2, L_-2] = 4 L_0 + c/12 * 6
        let b = bracket::<Rational>(Mode::l(2), Mode::l(-2), &int(12));
        assert_eq!(b.term, Some((int(4), Mode::l(0))));
        assert_eq!(b.central, int(6));
    }

    #[test]
    fn mixed_brackets_antisymmetric() {
        // [L_-1, G_1/2] = (-1/2 - 1/2) G_-1/2
        let b = bracket::<Rational>(Mode::l(-1), Mode::g(1), &int(0));
        assert_eq!(b.term, Some((int(-1), Mode::g(-1))));
        let r = bracket::<Rational>(Mode::g(1), Mode::l(-1), &int(0));
        assert_eq!(r.term, Some((int(1), Mode::g(-1))));
    }

    #[test]
    fn g_three_halves_central() {
        // {G_3/2, G_-3/2} = 2 L_0 + c/3 (9/4 - 1/4)
        let b = bracket::<Rational>(Mode::g(3), Mode::g(-3), &rat(3, 2));
        assert_eq!(b.central, int(1));
    }
}
