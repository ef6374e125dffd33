//! Exact scalars: rationals, the radical ring `Q[sqrt(n)]`, half-integers and
//! tagged univariate polynomials.
//!
//! Nothing in this crate touches floating point. Every structure constant,
//! Gram entry and polynomial coefficient is carried by one of the types here.

mod halfint;
mod parse;
mod poly;
mod radical;

pub use halfint::HalfInt;
pub use poly::{Polynomial, Var, VariableMismatch};
pub use parse::ParseRadicalError;
pub use radical::{square_free_decompose, Radical, RadicalError};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a [`Rational`]. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Commutative ring of exact scalars, with inversion where it exists.
///
/// `try_inverse` returning `None` for a nonzero element is allowed (the
/// radical ring only inverts inside quadratic subfields); callers fall back
/// to division-free algorithms in that case.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// Whether [`Ring::normalize_row`] does anything.
    const NORMALIZES: bool = false;

    /// Rescales a vector by a nonzero scalar to keep entries small. No-op by default.
    fn normalize_row(_row: &mut [Self]) {}
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    const NORMALIZES: bool = true;

    /// Divides by the content so the entries become coprime integers.
    fn normalize_row(row: &mut [Self]) {
        use num_integer::Integer;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for x in row.iter().filter(|x| !Zero::is_zero(*x)) {
            num = num.gcd(x.numer());
            den = den.lcm(x.denom());
        }
        if num.is_zero() || (num.is_one() && den.is_one()) {
            return;
        }
        let k = Rational::new(den, num);
        for x in row.iter_mut() {
            *x = &*x * &k;
        }
    }
}

/// Canonical text of a rational: `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p/q`, `p`, or a signed variant of either. No decimals.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Whether a rational is a nonnegative perfect square; returns the root.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
