use std::cmp::Ordering;
use std::fmt;

use super::mode::{Mode, ModeKind};
use crate::scalar::HalfInt;

/// Normal-ordered monomial `G(-r_1)...G(-r_k) L(-n_1)...L(-n_l)` acting on the
/// highest-weight vector, with `r_1 > ... > r_k > 0` and `n_1 >= ... >= n_l > 0`.
///
/// Words are ordered lexicographically on their mode sequences, modes compared
/// with `G` before `L` and then by signed index, so `G(-3/2) < G(-1/2)L(-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PBWWord {
    /// Twice the `r_i`, strictly decreasing odd positive integers.
    g: Vec<u32>,
    /// The `n_j`, weakly decreasing positive integers.
    l: Vec<u32>,
}

impl PBWWord {
    pub fn vacuum() -> Self {
        PBWWord::default()
    }

    /// Checks the normal-order invariants.
    pub fn new(g_twice: Vec<u32>, l: Vec<u32>) -> Option<Self> {
        let g_ok = g_twice.iter().all(|t| t % 2 == 1) && g_twice.windows(2).all(|w| w[0] > w[1]);
        let l_ok = l.iter().all(|&n| n > 0) && l.windows(2).all(|w| w[0] >= w[1]);
        (g_ok && l_ok).then_some(PBWWord { g: g_twice, l })
    }

    pub fn g_twice(&self) -> &[u32] {
        &self.g
    }

    pub fn l_modes(&self) -> &[u32] {
        &self.l
    }

    pub fn is_vacuum(&self) -> bool {
        self.g.is_empty() && self.l.is_empty()
    }

    pub fn len(&self) -> usize {
        self.g.len() + self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn level(&self) -> HalfInt {
        let twice: u32 = self.g.iter().sum::<u32>() + 2 * self.l.iter().sum::<u32>();
        HalfInt::from_twice(i64::from(twice))
    }

    /// 1 for an odd number of `G` modes.
    pub fn parity(&self) -> u8 {
        (self.g.len() % 2) as u8
    }

    /// The creation modes, left to right.
    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        self.g
            .iter()
            .map(|&t| Mode::g(-i64::from(t)))
            .chain(self.l.iter().map(|&n| Mode::l(-i64::from(n))))
    }

    pub fn leading(&self) -> Option<Mode> {
        self.modes().next()
    }

    /// The word with its leading mode removed.
    pub fn tail(&self) -> PBWWord {
        let mut w = self.clone();
        if !w.g.is_empty() {
            w.g.remove(0);
        } else if !w.l.is_empty() {
            w.l.remove(0);
        }
        w
    }

    /// `x * self` if that is already normal ordered.
    pub fn try_prepend(&self, x: Mode) -> Option<PBWWord> {
        let t = x.index.twice();
        if t >= 0 {
            return None;
        }
        let mut w = self.clone();
        match x.kind {
            ModeKind::G => {
                let r = (-t) as u32;
                if self.g.first().is_some_and(|&top| top >= r) {
                    return None;
                }
                w.g.insert(0, r);
            }
            ModeKind::L => {
                if !self.g.is_empty() {
                    return None;
                }
                let n = (-t / 2) as u32;
                if self.l.first().is_some_and(|&top| top > n) {
                    return None;
                }
                w.l.insert(0, n);
            }
        }
        Some(w)
    }
}

impl Ord for PBWWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modes()
            .map(Mode::order_key)
            .cmp(other.modes().map(Mode::order_key))
    }
}

impl PartialOrd for PBWWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PBWWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vacuum() {
            return write!(f, "vac");
        }
        for m in self.modes() {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PBWWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn strict_half_odd_parts(budget: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u32)>) {
    out.push((prefix.clone(), budget));
    let mut t = 1;
    while t <= budget && t < max {
        prefix.push(t);
        strict_half_odd_parts(budget - t, t, prefix, out);
        prefix.pop();
        t += 2;
    }
}

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for k in (1..=n.min(max)).rev() {
        prefix.push(k);
        partitions(n - k, k, prefix, out);
        prefix.pop();
    }
}

/// Every normal-ordered word of the given level, ascending in word order.
pub fn pbw_basis(level: HalfInt) -> Vec<PBWWord> {
    assert!(level.twice() >= 0, "negative level");
    let budget = level.twice() as u32;
    let mut g_parts = Vec::new();
    strict_half_odd_parts(budget, u32::MAX, &mut Vec::new(), &mut g_parts);
    let mut out = Vec::new();
    for (g, rest) in g_parts {
        // rest is twice the remaining level; the L part needs an integer level
        if rest % 2 != 0 {
            continue;
        }
        let mut ls = Vec::new();
        partitions(rest / 2, u32::MAX, &mut Vec::new(), &mut ls);
        for l in ls {
            out.push(PBWWord { g: g.clone(), l });
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(level: i64) -> Vec<String> {
        pbw_basis(HalfInt::from_twice(level))
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    /// Coefficients of prod (1 + q^{n-1/2}) / (1 - q^n) in powers of q^{1/2}.
    fn generating_function(max_twice: usize) -> Vec<u64> {
        let mut series = vec![0u64; max_twice + 1];
        series[0] = 1;
        for t in (1..=max_twice).step_by(2) {
            for k in (t..=max_twice).rev() {
                series[k] += series[k - t];
            }
        }
        for t in (2..=max_twice).step_by(2) {
            for k in t..=max_twice {
                series[k] += series[k - t];
            }
        }
        series
    }

    #[test]
    fn small_levels() {
        assert_eq!(names(0), vec!["vac"]);
        assert_eq!(names(3), vec!["G(-3/2)", "G(-1/2)L(-1)"]);
        assert_eq!(names(4), vec!["G(-3/2)G(-1/2)", "L(-2)", "L(-1)L(-1)"]);
    }

    #[test]
    fn basis_sizes_match_character() {
        let gf = generating_function(24);
        for (t, expected) in gf.iter().enumerate() {
            assert_eq!(pbw_basis(HalfInt::from_twice(t as i64)).len() as u64, *expected, "level {t}/2");
        }
    }

    #[test]
    fn words_have_requested_level_and_order() {
        for t in 0..14 {
            let level = HalfInt::from_twice(t);
            let b = pbw_basis(level);
            assert!(b.iter().all(|w| w.level() == level));
            assert!(b.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn prepend_respects_normal_order() {
        let w = PBWWord::new(vec![1], vec![1]).unwrap();
        assert!(w.try_prepend(Mode::g(-3)).is_some());
        assert!(w.try_prepend(Mode::g(-1)).is_none());
        assert!(w.try_prepend(Mode::l(-2)).is_none());
        let l = PBWWord::new(vec![], vec![2]).unwrap();
        assert!(l.try_prepend(Mode::l(-2)).is_some());
        assert!(l.try_prepend(Mode::l(-1)).is_none());
        assert!(l.try_prepend(Mode::g(-1)).is_some());
    }
}
