//! Projection of the singular vector onto matrix coefficients
//! `c1 x^s + c2 phi x^(s-1/2)`, `s = h - h_{1,q} - h_{1,r}`, through the
//! super-differential operators that replace NS generators.
//!
//! After depth `d` the state is `A x^(s-d) + B phi x^(s-d-1/2)`, and
//!
//! * `L(-n)`: `A' = -A (s - d + (1-n) h1)`, `B' = -B (s - d - 1/2 + (1-n)(h1 + 1/2))`
//! * `G(-n-1/2)`: `A' = B`, `B' = -A (s - d - 2n h1)`

use serde::Serialize;

use crate::ns::{degenerate_weight, Mode, ModeKind, PBWWord, VermaElement};
use crate::scalar::{int, rat, HalfInt, Polynomial, Rational, Var};
use crate::singvec::SingvecError;
use crate::zhu::{ZhuError, ZhuTables};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DensityError {
    #[error("projection ended at depth {got}, expected {expected}")]
    DepthMismatch { got: HalfInt, expected: HalfInt },
    #[error("generator {0} does not lower")]
    NotLowering(Mode),
    #[error(transparent)]
    Zhu(#[from] ZhuError),
    #[error(transparent)]
    Singvec(#[from] SingvecError),
}

/// Sign of the `h1` term in the `G` operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GConvention {
    /// `B' = -A (s - d - 2n h1)`, the sign the commutation relations require.
    #[default]
    Consistent,
    /// `B' = -A (s - d + 2n h1)`.
    Printed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityCoefficient {
    pub depth: HalfInt,
    /// Coefficient of `x^(s-d)`.
    pub body: Polynomial<Rational>,
    /// Coefficient of `phi x^(s-d-1/2)`.
    pub soul: Polynomial<Rational>,
    pub h1: Rational,
    pub hq: Rational,
}

impl DensityCoefficient {
    pub fn seed(body: Rational, soul: Rational, h1: Rational, hq: Rational) -> Self {
        DensityCoefficient {
            depth: HalfInt::ZERO,
            body: Polynomial::constant(Var::H, body),
            soul: Polynomial::constant(Var::H, soul),
            h1,
            hq,
        }
    }

    /// `s - d + k` as a polynomial in `h`.
    fn exponent(&self, k: Rational) -> Polynomial<Rational> {
        let c = -self.hq.clone() - &self.h1 - self.depth.to_rational() + k;
        Polynomial::linear(Var::H, c, int(1))
    }
}

pub fn apply_generator(m: Mode, e: &DensityCoefficient) -> Result<DensityCoefficient, DensityError> {
    apply_generator_with(m, e, GConvention::Consistent)
}

pub fn apply_generator_with(
    m: Mode,
    e: &DensityCoefficient,
    convention: GConvention,
) -> Result<DensityCoefficient, DensityError> {
    if m.index.twice() >= 0 {
        return Err(DensityError::NotLowering(m));
    }
    let weight = -m.index;
    let h1 = &e.h1;
    let (body, soul) = match m.kind {
        ModeKind::L => {
            let n = weight.to_rational();
            let one_minus = int(1) - &n;
            let fa = e.exponent(&one_minus * h1);
            let fb = e.exponent(rat(-1, 2) + &one_minus * (h1 + rat(1, 2)));
            (-(e.body.clone() * fa), -(e.soul.clone() * fb))
        }
        ModeKind::G => {
            let n = weight.to_rational() - rat(1, 2);
            let shift = int(2) * &n * h1;
            let k = match convention {
                GConvention::Consistent => -shift,
                GConvention::Printed => shift,
            };
            (e.soul.clone(), -(e.body.clone() * e.exponent(k)))
        }
    };
    Ok(DensityCoefficient {
        depth: e.depth + weight,
        body,
        soul,
        ..e.clone()
    })
}

/// Runs `g_1 ... g_N` on a seed, `g_N` first.
pub fn apply_word(
    w: &PBWWord,
    seed: &DensityCoefficient,
    convention: GConvention,
) -> Result<DensityCoefficient, DensityError> {
    let modes: Vec<Mode> = w.modes().collect();
    modes
        .iter()
        .rev()
        .try_fold(seed.clone(), |acc, &m| apply_generator_with(m, &acc, convention))
}

/// Projection of a linear combination: `(C1, C2)` from the seeds `(1, 0)` and `(0, 1)`.
pub fn project_element(
    v: &VermaElement<Rational>,
    q: u32,
    r: u32,
    convention: GConvention,
) -> Result<(Polynomial<Rational>, Polynomial<Rational>), DensityError> {
    let h1 = degenerate_weight(i64::from(r));
    let hq = degenerate_weight(i64::from(q));
    let expected = HalfInt::from_twice(i64::from(q));
    let body_seed = DensityCoefficient::seed(int(1), int(0), h1.clone(), hq.clone());
    let soul_seed = DensityCoefficient::seed(int(0), int(1), h1, hq);
    let mut c1 = Polynomial::zero(Var::H);
    let mut c2 = Polynomial::zero(Var::H);
    for (w, k) in v.terms() {
        let a = apply_word(w, &body_seed, convention)?;
        let b = apply_word(w, &soul_seed, convention)?;
        if a.depth != expected {
            return Err(DensityError::DepthMismatch {
                got: a.depth,
                expected,
            });
        }
        c1 = c1 + a.soul.scale(k);
        c2 = c2 + b.body.scale(k);
    }
    Ok((c1, c2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub q: u32,
    pub r: u32,
    pub c1: Polynomial<Rational>,
    pub c2: Polynomial<Rational>,
}

pub fn project_with(tables: &ZhuTables, q: u32, r: u32) -> Result<Projection, DensityError> {
    let sv = tables.vectors().get(q)?;
    let (c1, c2) = project_element(&sv, q, r, GConvention::Consistent)?;
    Ok(Projection { q, r, c1, c2 })
}

pub fn project(q: u32, r: u32) -> Result<Projection, DensityError> {
    project_with(&ZhuTables::new(), q, r)
}

/// `C1 ~ Q2` and `C2 ~ Q1`, with `x` read as `h`.
pub fn matches_zhu(tables: &ZhuTables, p: &Projection) -> Result<bool, DensityError> {
    let z = tables.q_polynomials(p.q, p.r)?;
    Ok(p.c1.proportional(&z.q2.rename(Var::H)) && p.c2.proportional(&z.q1.rename(Var::H)))
}

/// `prod_{-j <= k <= j} (h - h_{1,a+4k})` and
/// `prod_{-j+1/2 <= k <= j-1/2} (h + 1/2 - h_{1,a+4k})` with `j = (b-1)/4`, `k`
/// stepping by 1.
fn products(a: u32, b: u32) -> (Polynomial<Rational>, Polynomial<Rational>) {
    // work with 4k, which steps by 4 from -(b-1) to b-1
    let (a, b) = (i64::from(a), i64::from(b));
    let mut c1 = Polynomial::one(Var::H);
    let mut k4 = -(b - 1);
    while k4 < b {
        c1 = c1 * Polynomial::linear(Var::H, -degenerate_weight(a + k4), int(1));
        k4 += 4;
    }
    let mut c2 = Polynomial::one(Var::H);
    let mut k4 = -(b - 1) + 2;
    while k4 <= b - 3 {
        c2 = c2 * Polynomial::linear(Var::H, rat(1, 2) - degenerate_weight(a + k4), int(1));
        k4 += 4;
    }
    (c1, c2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForms {
    /// `(C1, C2)` with `q` in the labels and `j = (r-1)/4`.
    pub printed: (Polynomial<Rational>, Polynomial<Rational>),
    /// Roles exchanged: labels from `r`, `j = (q-1)/4`.
    pub swapped: (Polynomial<Rational>, Polynomial<Rational>),
}

pub fn closed_form_c(q: u32, r: u32) -> ClosedForms {
    ClosedForms {
        printed: products(q, r),
        swapped: products(r, q),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Printed,
    Swapped,
    Neither,
}

fn orientation_of(
    target: &Polynomial<Rational>,
    printed: &Polynomial<Rational>,
    swapped: &Polynomial<Rational>,
) -> Orientation {
    if target.proportional(printed) {
        Orientation::Printed
    } else if target.proportional(swapped) {
        Orientation::Swapped
    } else {
        Orientation::Neither
    }
}

/// Which closed form matches the projection, for `C1` alone and for both.
pub fn compare_closed_form(p: &Projection) -> (Orientation, Orientation) {
    let cf = closed_form_c(p.q, p.r);
    let c1 = orientation_of(&p.c1, &cf.printed.0, &cf.swapped.0);
    let both = if p.c1.proportional(&cf.printed.0) && p.c2.proportional(&cf.printed.1) {
        Orientation::Printed
    } else if p.c1.proportional(&cf.swapped.0) && p.c2.proportional(&cf.swapped.1) {
        Orientation::Swapped
    } else {
        Orientation::Neither
    };
    (c1, both)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub q: u32,
    pub r: u32,
    #[serde(rename = "C1")]
    pub c1: String,
    #[serde(rename = "C2")]
    pub c2: String,
    pub matches_zhu: bool,
    pub closed_form_orientation: Orientation,
    pub c1_closed_form_orientation: Orientation,
}

pub fn report(tables: &ZhuTables, q: u32, r: u32) -> Result<ProjectionReport, DensityError> {
    let p = project_with(tables, q, r)?;
    let matches = matches_zhu(tables, &p)?;
    let (c1_or, both) = compare_closed_form(&p);
    Ok(ProjectionReport {
        q,
        r,
        c1: p.c1.to_string(),
        c2: p.c2.to_string(),
        matches_zhu: matches,
        closed_form_orientation: both,
        c1_closed_form_orientation: c1_or,
    })
}
