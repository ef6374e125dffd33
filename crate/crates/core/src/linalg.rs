//! Fraction-free elimination over an exact [`Ring`].
//!
//! Forward elimination updates `row_i <- p * row_i - a * row_pivot` and then
//! divides by the previous pivot when that pivot is invertible (Bareiss).
//! When it is not (a radical outside a quadratic field), the division is
//! skipped; row spaces are unchanged either way, so rank and kernel stay exact.

use crate::scalar::Ring;

/// Row-major dense matrix.
pub type Matrix<S> = Vec<Vec<S>>;

/// Row echelon form in place. Returns the pivot column of each nonzero row.
pub fn echelon<S: Ring>(m: &mut Matrix<S>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev_inv: Option<S> = None;
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let a = row[col].clone();
            if a.is_zero() {
                // still rescale for a uniform Bareiss step
                if let Some(inv) = &prev_inv {
                    for x in row[col..].iter_mut() {
                        *x = x.clone() * &piv * inv;
                    }
                }
                continue;
            }
            for j in col..cols {
                let v = row[j].clone() * &piv - pivot_row[j].clone() * &a;
                row[j] = match &prev_inv {
                    Some(inv) => v * inv,
                    None => v,
                };
            }
            S::normalize_row(&mut row[col..]);
        }
        prev_inv = if S::NORMALIZES { None } else { piv.try_inverse() };
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank<S: Ring>(m: &Matrix<S>) -> usize {
    let mut work = m.clone();
    echelon(&mut work).len()
}

/// Basis of `{ v : m v = 0 }`, one vector per free column, free entry set to 1
/// (or rescaled when back substitution meets a non-invertible pivot).
pub fn kernel<S: Ring>(m: &Matrix<S>, cols: usize) -> Vec<Vec<S>> {
    let mut work = m.clone();
    for row in &work {
        assert_eq!(row.len(), cols, "ragged matrix");
    }
    let pivots = echelon(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![S::zero(); cols];
            x[f] = S::one();
            for (k, &p) in pivots.iter().enumerate().rev() {
                let row = &work[k];
                let s = (p + 1..cols)
                    .filter(|&j| !x[j].is_zero() && !row[j].is_zero())
                    .fold(S::zero(), |acc, j| acc + &(row[j].clone() * &x[j]));
                if s.is_zero() {
                    continue;
                }
                match row[p].try_inverse() {
                    Some(inv) => x[p] = -(s * &inv),
                    None => {
                        let scale = row[p].clone();
                        for v in x.iter_mut() {
                            *v = v.clone() * &scale;
                        }
                        x[p] = -s;
                    }
                }
            }
            x
        })
        .collect()
}

/// Determinant by Gaussian elimination. Requires every pivot met to be invertible.
pub fn determinant<S: Ring>(m: &Matrix<S>) -> Option<S> {
    let n = m.len();
    let mut a = m.clone();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Some(S::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        let inv = piv.try_inverse()?;
        det = det * &piv;
        for i in col + 1..n {
            let f = a[i][col].clone() * &inv;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let v = a[i][j].clone() - a[col][j].clone() * &f;
                a[i][j] = v;
            }
        }
    }
    Some(det)
}

pub fn mat_vec<S: Ring>(m: &Matrix<S>, v: &[S]) -> Vec<S> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(S::zero(), |acc, (a, b)| acc + &(a.clone() * b))
        })
        .collect()
}
