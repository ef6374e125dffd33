use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{rat, Rational};

/// An element of `Z/2`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }

    /// The integer value, if this is an integer.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// `self, self - 1/2, ..., lo` (inclusive), descending.
    pub fn descending_to(self, lo: HalfInt) -> impl Iterator<Item = HalfInt> {
        (lo.0..=self.0).rev().map(HalfInt)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a half-integer: {0:?}")]
pub struct ParseHalfIntError(pub String);

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `n`, `n/2`, or any `p/q` that reduces to a half-integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let r = super::parse_rational(s).ok_or_else(err)?;
        let twice = r * super::int(2);
        if !twice.is_integer() {
            return Err(err());
        }
        let t: i64 = twice.to_integer().try_into().map_err(|_| err())?;
        Ok(HalfInt(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for t in -7..=7 {
            let h = HalfInt::from_twice(t);
            assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
        }
        assert_eq!("3/2".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("2/4".parse::<HalfInt>().unwrap(), HalfInt::HALF);
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.5".parse::<HalfInt>().is_err());
    }

    #[test]
    fn descending_range() {
        let v: Vec<_> = HalfInt::ONE.descending_to(-HalfInt::ONE).collect();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], HalfInt::ONE);
        assert_eq!(v[4], -HalfInt::ONE);
    }
}
