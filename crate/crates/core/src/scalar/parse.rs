//! Exact parsing of radical expressions such as `15/2-3*sqrt(5)`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | atom
//! atom  := integer | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Decimal points are rejected.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{Radical, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}` at offset {offset}: {reason}")]
pub struct ParseRadicalError {
    pub input: String,
    pub offset: usize,
    pub reason: String,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, ParseRadicalError> {
        Err(ParseRadicalError {
            input: self.src.to_string(),
            offset: self.pos,
            reason: reason.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Radical, ParseRadicalError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Radical, ParseRadicalError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                match d.invert() {
                    Ok(inv) => acc = acc * inv,
                    Err(e) => return self.fail(e.to_string()),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Radical, ParseRadicalError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Radical, ParseRadicalError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.fail("expected `)`");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                if self.bytes.get(self.pos) == Some(&b'.') {
                    return self.fail("decimals are not accepted");
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(Radical::from(Rational::from_integer(n)))
            }
            Some(b's') if self.src[self.pos..].starts_with("sqrt") => {
                self.pos += 4;
                if !self.eat(b'(') {
                    return self.fail("expected `(` after sqrt");
                }
                let arg = self.expr()?;
                if !self.eat(b')') {
                    return self.fail("expected `)`");
                }
                match arg.sqrt() {
                    Some(r) => Ok(r),
                    None => self.fail(format!("sqrt({arg}) is not representable")),
                }
            }
            Some(_) => self.fail("unexpected character"),
            None => self.fail("unexpected end of input"),
        }
    }
}

impl FromStr for Radical {
    type Err = ParseRadicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        if p.peek().is_some() {
            return p.fail("trailing input");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn r(s: &str) -> Radical {
        s.parse().unwrap()
    }

    #[test]
    fn rationals_and_surds() {
        assert_eq!(r("3/2"), Radical::from(rat(3, 2)));
        assert_eq!(r(" -7 "), Radical::from(int(-7)));
        assert_eq!(
            r("15/2-3*sqrt(5)"),
            Radical::from(rat(15, 2)) + Radical::surd(int(-3), 5)
        );
        assert_eq!(r("sqrt(5)/2 - 1"), Radical::surd(rat(1, 2), 5) - Radical::one());
        assert_eq!(r("sqrt(12)"), Radical::surd(int(2), 3));
        assert_eq!(r("(1+sqrt(2))*(1-sqrt(2))"), Radical::from(int(-1)));
    }

    #[test]
    fn rejects_floats_and_garbage() {
        assert!("1.5".parse::<Radical>().is_err());
        assert!("3/0".parse::<Radical>().is_err());
        assert!("sqrt(-1)".parse::<Radical>().is_err());
        assert!("2 3".parse::<Radical>().is_err());
        assert!("".parse::<Radical>().is_err());
    }
}
