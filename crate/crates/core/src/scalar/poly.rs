use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::Ring;

/// Which indeterminate a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    /// Zhu bimodule class `[L(-2) - 2L(-1) + L(0)]`.
    X,
    /// Zhu algebra generator `[L(-2) - L(-1)]`.
    Y,
    /// Conformal weight of the third module.
    H,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::H => "h",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("polynomial variable mismatch: {left:?} vs {right:?}")]
pub struct VariableMismatch {
    pub left: Var,
    pub right: Var,
}

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    var: Var,
    coeffs: Vec<S>,
}

impl<S: Ring> Polynomial<S> {
    pub fn new(var: Var, mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Polynomial { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        Polynomial { var, coeffs: vec![] }
    }

    pub fn constant(var: Var, c: S) -> Self {
        Self::new(var, vec![c])
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, S::one())
    }

    /// The monomial `var`.
    pub fn variable(var: Var) -> Self {
        Self::new(var, vec![S::zero(), S::one()])
    }

    /// `a + b * var`.
    pub fn linear(var: Var, a: S, b: S) -> Self {
        Self::new(var, vec![a, b])
    }

    /// `prod (var - r)` over the given roots.
    pub fn from_roots<'a, I>(var: Var, roots: I) -> Self
    where
        I: IntoIterator<Item = &'a S>,
        S: 'a,
    {
        roots.into_iter().fold(Self::one(var), |acc, r| {
            acc * Self::linear(var, -r.clone(), S::one())
        })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * v + c)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(
            self.var,
            self.coeffs.iter().map(|a| a.clone() * c).collect(),
        )
    }

    /// Same coefficients, different variable tag.
    pub fn rename(&self, var: Var) -> Self {
        Polynomial {
            var,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, VariableMismatch> {
        self.check(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, VariableMismatch> {
        self.check(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Ok(Self::new(self.var, out))
    }

    fn check(&self, rhs: &Self) -> Result<(), VariableMismatch> {
        if self.var == rhs.var {
            Ok(())
        } else {
            Err(VariableMismatch {
                left: self.var,
                right: rhs.var,
            })
        }
    }

    /// Synthetic division by `(var - root)`: returns `(quotient, remainder)`.
    pub fn divide_linear(&self, root: &S) -> (Self, S) {
        if self.coeffs.is_empty() {
            return (Self::zero(self.var), S::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![S::zero(); n - 1];
        let mut carry = S::zero();
        for i in (0..n).rev() {
            let v = self.coeffs[i].clone() + &(carry * root);
            if i == 0 {
                return (Self::new(self.var, quot), v);
            }
            quot[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Multiplicity of `root` as a root (0 if not a root). Zero polynomial gives `None`.
    pub fn root_multiplicity(&self, root: &S) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.divide_linear(root);
            if !rem.is_zero() {
                return Some(m);
            }
            m += 1;
            p = q;
        }
    }

    /// Projective equality: `self = lambda * other` for some nonzero `lambda`.
    ///
    /// Tested by cross-multiplying with the leading coefficients, which is
    /// the same as comparing after clearing content and normalizing.
    pub fn proportional(&self, other: &Self) -> bool {
        if self.var != other.var {
            return false;
        }
        match (self.leading(), other.leading()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                self.coeffs.len() == other.coeffs.len()
                    && self
                        .coeffs
                        .iter()
                        .zip(&other.coeffs)
                        .all(|(x, y)| x.clone() * b == y.clone() * a)
            }
            _ => false,
        }
    }

    /// Divides through by the leading coefficient when it is invertible.
    pub fn monic(&self) -> Option<Self> {
        let inv = self.leading()?.try_inverse()?;
        Some(self.scale(&inv))
    }
}

impl<S: Ring> Add for Polynomial<S> {
    type Output = Self;
    /// Panics on mismatched variables; see [`Polynomial::try_add`].
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("polynomial variable mismatch")
    }
}

impl<S: Ring> Sub for Polynomial<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(&-rhs).expect("polynomial variable mismatch")
    }
}

impl<S: Ring> Mul for Polynomial<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("polynomial variable mismatch")
    }
}

impl<S: Ring> Neg for Polynomial<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial {
            var: self.var,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<S: Ring> fmt::Display for Polynomial<S> {
    /// Dense ascending, e.g. `-1/4 + 0*x + 1*x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let text = c.to_string();
            let text = if text.contains(" + ") && i > 0 {
                format!("({text})")
            } else {
                text
            };
            match i {
                0 => write!(f, "{text}")?,
                1 => write!(f, "{text}*{v}")?,
                _ => write!(f, "{text}*{v}^{i}")?,
            }
        }
        Ok(())
    }
}

impl<S: Ring> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self)
    }
}

impl<S: Ring> Serialize for Polynomial<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.to_string())
    }
}
