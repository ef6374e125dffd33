use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{int, rational_sqrt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RadicalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert {0}: support is not contained in a quadratic field")]
    UnsupportedInversion(String),
}

/// Element of `Q[sqrt(n) : n square-free]`, stored as `sum c_n * sqrt(n)`.
///
/// Keys are square-free positive integers, key 1 holds the rational part and
/// no zero coefficient is ever stored, so derived equality is exact equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Radical {
    terms: BTreeMap<u64, Rational>,
}

/// Splits `n > 0` as `s^2 * f` with `f` square-free. Returns `(s, f)`.
pub fn square_free_decompose(mut n: u64) -> (u64, u64) {
    assert!(n > 0, "square_free_decompose of 0");
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, f * n)
}

impl Radical {
    pub fn zero() -> Self {
        Radical::default()
    }

    pub fn one() -> Self {
        Self::from(int(1))
    }

    /// `coeff * sqrt(n)` for any positive integer `n`; square factors are pulled out.
    pub fn surd(coeff: Rational, n: u64) -> Self {
        let (s, f) = square_free_decompose(n);
        let mut terms = BTreeMap::new();
        let c = coeff * int(s as i64);
        if !c.is_zero() {
            terms.insert(f, c);
        }
        Radical { terms }
    }

    /// `sqrt(n)` for a positive integer `n`.
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            return Radical::zero();
        }
        Self::surd(int(1), n)
    }

    /// Exact square root of a nonnegative rational, `sqrt(p/q) = sqrt(p*q)/q`.
    /// `None` if negative or too large to factor.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Radical::zero());
        }
        let pq = (r.numer() * r.denom()).to_u64()?;
        let den = Rational::from_integer(r.denom().clone());
        Some(Self::surd(den.recip(), pq))
    }

    /// Builds a value from raw `(n, c)` pairs; any `n` is normalized.
    pub fn from_terms<I: IntoIterator<Item = (u64, Rational)>>(pairs: I) -> Self {
        pairs
            .into_iter()
            .fold(Radical::zero(), |acc, (n, c)| acc + Radical::surd(c, n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value, if there is no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(int(0)),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(|| int(0))
    }

    /// Square-free radicands other than 1 that appear.
    pub fn radicands(&self) -> Vec<u64> {
        self.terms.keys().copied().filter(|&k| k != 1).collect()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Radical::zero();
        }
        Radical {
            terms: self.terms.iter().map(|(k, v)| (*k, v * r)).collect(),
        }
    }

    /// Rebuilds from the stored terms; the identity on every well-formed value.
    pub fn renormalized(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone())))
    }

    /// `(a, b, n)` with `self = a + b sqrt(n)`, if `self` lies in one quadratic field.
    fn quadratic_parts(&self) -> Option<(Rational, Rational, u64)> {
        let irr = self.radicands();
        match irr.as_slice() {
            [] => Some((self.rational_part(), int(0), 1)),
            [n] => Some((self.rational_part(), self.terms[n].clone(), *n)),
            _ => None,
        }
    }

    /// Inverse inside a quadratic field, via `1/(a + b sqrt n) = (a - b sqrt n)/(a^2 - n b^2)`.
    pub fn invert(&self) -> Result<Self, RadicalError> {
        if self.is_zero() {
            return Err(RadicalError::DivisionByZero);
        }
        let (a, b, n) = self
            .quadratic_parts()
            .ok_or_else(|| RadicalError::UnsupportedInversion(self.to_string()))?;
        let norm = &a * &a - &b * &b * int(n as i64);
        let inv = norm.recip();
        let mut out = Radical::from(a * &inv);
        if n != 1 {
            out = out + Radical::surd(-b * inv, n);
        }
        Ok(out)
    }

    /// Square root inside the radical ring, if one exists there.
    ///
    /// Rationals use [`Radical::sqrt_rational`]. For `a + b sqrt(n)` the
    /// denesting `sqrt(x) + sign(b) sqrt(y)` with `x + y = a`, `4xy = b^2 n`
    /// is attempted, which needs `a^2 - b^2 n` to be a rational square.
    pub fn sqrt(&self) -> Option<Self> {
        let (a, b, n) = self.quadratic_parts()?;
        if b.is_zero() {
            return Self::sqrt_rational(&a);
        }
        let disc = &a * &a - &b * &b * int(n as i64);
        let d = rational_sqrt(&disc)?;
        let half = super::rat(1, 2);
        let x = (&a + &d) * &half;
        let y = (&a - &d) * &half;
        let rx = Self::sqrt_rational(&x)?;
        let ry = Self::sqrt_rational(&y)?;
        let root = if b.is_positive() { rx + ry } else { rx - ry };
        debug_assert_eq!(&(root.clone() * root.clone()), self);
        Some(root)
    }

    fn mul_ref(&self, rhs: &Radical) -> Radical {
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&m, a) in &self.terms {
            for (&n, b) in &rhs.terms {
                let g = m.gcd(&n);
                let key = (m / g) * (n / g);
                let c = a * b * int(g as i64);
                let slot = terms.entry(key).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Radical { terms }
    }

    fn add_ref(&self, rhs: &Radical, sign: i64) -> Radical {
        let mut terms = self.terms.clone();
        for (&n, c) in &rhs.terms {
            let slot = terms.entry(n).or_insert_with(Rational::zero);
            if sign > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Radical { terms }
    }
}

impl From<Rational> for Radical {
    fn from(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        Radical { terms }
    }
}

impl From<i64> for Radical {
    fn from(n: i64) -> Self {
        Radical::from(int(n))
    }
}

impl From<BigInt> for Radical {
    fn from(n: BigInt) -> Self {
        Radical::from(Rational::from_integer(n))
    }
}

macro_rules! radical_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<Radical> for Radical {
            type Output = Radical;
            fn $method(self, rhs: Radical) -> Radical {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Radical> for Radical {
            type Output = Radical;
            fn $method(self, rhs: &'a Radical) -> Radical {
                $body(&self, rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Radical> for &'a Radical {
            type Output = Radical;
            fn $method(self, rhs: &'b Radical) -> Radical {
                $body(self, rhs)
            }
        }
    };
}

radical_binop!(Add, add, |a: &Radical, b: &Radical| a.add_ref(b, 1));
radical_binop!(Sub, sub, |a: &Radical, b: &Radical| a.add_ref(b, -1));
radical_binop!(Mul, mul, |a: &Radical, b: &Radical| a.mul_ref(b));

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Neg for &Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        -self.clone()
    }
}

impl super::Ring for Radical {
    fn zero() -> Self {
        Radical::zero()
    }

    fn one() -> Self {
        Radical::one()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_rational(r: Rational) -> Self {
        Radical::from(r)
    }

    fn try_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
}

impl fmt::Display for Radical {
    /// `c1 + c2*sqrt(n)`, ascending radicand, rational part bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *n == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt({n})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radical({self})")
    }
}

impl One for Radical {
    fn one() -> Self {
        Radical::one()
    }
}
