use serde::Serialize;

use super::NsError;
use crate::scalar::{int, rat, HalfInt, Radical};

/// A point `(h_{p,q}(t), c(t))` on the reducibility curves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub p: u32,
    pub q: u32,
    #[serde(serialize_with = "display")]
    pub t: Radical,
    #[serde(serialize_with = "display")]
    pub h: Radical,
}

fn display<S: serde::Serializer>(v: &Radical, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `c(t) = 15/2 + 3/t + 3t`.
pub fn central_charge(t: &Radical) -> Option<Radical> {
    let inv = t.invert().ok()?;
    Some(Radical::from(rat(15, 2)) + inv * Radical::from(3) + t.clone() * Radical::from(3))
}

/// `h_{p,q}(t) = (1-p^2)/8 t^{-1} + (1-pq)/4 + (1-q^2)/8 t`, with `t^{-1}` supplied.
pub fn curve_weight(p: u32, q: u32, t: &Radical, t_inv: &Radical) -> Radical {
    let (p, q) = (i64::from(p), i64::from(q));
    t_inv.scale(&rat(1 - p * p, 8)) + Radical::from(rat(1 - p * q, 4)) + t.scale(&rat(1 - q * q, 8))
}

/// Roots of `3t^2 + (15/2 - c) t + 3 = 0`, the `+` root first.
pub fn curve_parameters(c: &Radical) -> Result<Vec<Radical>, NsError> {
    let b = Radical::from(rat(15, 2)) - c;
    let disc = b.clone() * &b - Radical::from(36);
    let sq = disc.sqrt().ok_or_else(|| NsError::UnrepresentableRoot {
        discriminant: disc.to_string(),
    })?;
    let sixth = rat(1, 6);
    let plus = (sq.clone() - &b).scale(&sixth);
    let minus = (-sq.clone() - &b).scale(&sixth);
    if sq.is_zero() {
        Ok(vec![plus])
    } else {
        Ok(vec![plus, minus])
    }
}

/// Points with `p = q mod 2` and `pq/2 <= max_level`, per root `t`, in `(p, q)`
/// order, dropping repeats of `(h, pq)`.
pub fn reducibility_locus(c: &Radical, max_level: HalfInt) -> Result<Vec<CurvePoint>, NsError> {
    let ts = curve_parameters(c)?;
    let bound = max_level.twice();
    let mut out: Vec<CurvePoint> = Vec::new();
    for t in &ts {
        // the two roots multiply to 1
        let t_inv = t.invert().map_err(|_| NsError::UnrepresentableRoot {
            discriminant: t.to_string(),
        })?;
        debug_assert_eq!(central_charge(t).as_ref(), Some(c));
        for p in 1..=bound.max(0) as u32 {
            for q in 1..=bound.max(0) as u32 {
                if (p + q) % 2 != 0 || i64::from(p * q) > bound {
                    continue;
                }
                let h = curve_weight(p, q, t, &t_inv);
                if out.iter().any(|o| o.h == h && o.p * o.q == p * q) {
                    continue;
                }
                out.push(CurvePoint {
                    p,
                    q,
                    t: t.clone(),
                    h,
                });
            }
        }
    }
    Ok(out)
}

/// `h_{1,s}` at `c = 3/2`: `(s-1)^2 / 8`.
pub fn degenerate_weight(s: i64) -> crate::scalar::Rational {
    int((s - 1) * (s - 1)) / int(8)
}
