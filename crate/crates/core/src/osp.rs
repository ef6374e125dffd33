//! Finite-dimensional osp(1|2) modules `V(j)`, their super tensor products
//! and the Grothendieck ring.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg;
use crate::scalar::{int, HalfInt, Radical, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OspGenerator {
    X,
    Y,
    H,
    Phi,
    Chi,
}

impl OspGenerator {
    pub const ALL: [OspGenerator; 5] = [
        OspGenerator::X,
        OspGenerator::Y,
        OspGenerator::H,
        OspGenerator::Phi,
        OspGenerator::Chi,
    ];

    pub fn is_odd(self) -> bool {
        matches!(self, OspGenerator::Phi | OspGenerator::Chi)
    }

    fn parity(self) -> u8 {
        u8::from(self.is_odd())
    }
}

impl fmt::Display for OspGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OspGenerator::X => "x",
            OspGenerator::Y => "y",
            OspGenerator::H => "h",
            OspGenerator::Phi => "phi",
            OspGenerator::Chi => "chi",
        };
        f.write_str(s)
    }
}

/// Which formula pair the odd generators use on `v_i`.
///
/// `IntegerOffset` takes the `-sqrt(j+i)`, `-sqrt(j-i)` pair when `i - j` is an
/// integer (the top vector), which is the choice that satisfies the brackets.
/// `Inverted` swaps the two cases and exists for mutation testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BranchRule {
    #[default]
    IntegerOffset,
    Inverted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OspIrrep {
    pub j: HalfInt,
}

impl OspIrrep {
    pub fn new(j: HalfInt) -> Self {
        assert!(j.twice() >= 0, "negative highest weight {j}");
        OspIrrep { j }
    }

    pub fn dim(self) -> usize {
        (2 * self.j.twice() + 1) as usize
    }

    /// `j, j - 1/2, ..., -j`.
    pub fn basis(self) -> impl Iterator<Item = HalfInt> {
        self.j.descending_to(-self.j)
    }

    pub fn contains(self, i: HalfInt) -> bool {
        i.abs() <= self.j
    }

    /// 0 if `i - j` is an integer (the top vector is even), else 1.
    pub fn parity(self, i: HalfInt) -> u8 {
        u8::from(!(i - self.j).is_integer())
    }
}

fn floor(x: HalfInt) -> i64 {
    x.twice().div_euclid(2)
}

/// Coefficient and target index of `g . v_i`, or `None` if it vanishes.
pub fn basis_action(
    rule: BranchRule,
    g: OspGenerator,
    rep: OspIrrep,
    i: HalfInt,
) -> Option<(HalfInt, Radical)> {
    let j = rep.j.to_rational();
    let iv = i.to_rational();
    let half = crate::scalar::rat(1, 2);
    let sqrt = |r: Rational| Radical::sqrt_rational(&r).expect("negative radicand in osp action");
    let (target, coeff) = match g {
        OspGenerator::H => (i, Radical::from(int(2) * &iv)),
        // square brackets are integer parts, so the odd vectors carry spin j - 1/2
        OspGenerator::X => (
            i + HalfInt::ONE,
            sqrt(int(floor(rep.j - i) * floor(rep.j + i + HalfInt::ONE))),
        ),
        OspGenerator::Y => (
            i - HalfInt::ONE,
            sqrt(int(floor(rep.j + i) * floor(rep.j - i + HalfInt::ONE))),
        ),
        OspGenerator::Phi | OspGenerator::Chi => {
            let top_branch = (i - rep.j).is_integer() == (rule == BranchRule::IntegerOffset);
            match (g, top_branch) {
                (OspGenerator::Phi, true) => (i - HalfInt::HALF, -sqrt(&j + &iv)),
                (OspGenerator::Chi, true) => (i + HalfInt::HALF, -sqrt(&j - &iv)),
                (OspGenerator::Phi, false) => (i - HalfInt::HALF, sqrt(&j - &iv + &half)),
                (OspGenerator::Chi, false) => (i + HalfInt::HALF, -sqrt(&j + &iv + &half)),
                _ => unreachable!(),
            }
        }
    };
    (rep.contains(target) && !coeff.is_zero()).then_some((target, coeff))
}

/// Vector in `V(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OspVector {
    pub rep: OspIrrep,
    entries: BTreeMap<HalfInt, Radical>,
}

impl OspVector {
    pub fn zero(rep: OspIrrep) -> Self {
        OspVector {
            rep,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(rep: OspIrrep, i: HalfInt) -> Self {
        assert!(rep.contains(i), "index {i} outside V({})", rep.j);
        let mut v = Self::zero(rep);
        v.entries.insert(i, Radical::one());
        v
    }

    pub fn entries(&self) -> &BTreeMap<HalfInt, Radical> {
        &self.entries
    }

    pub fn coeff(&self, i: HalfInt) -> Radical {
        self.entries.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_term(&mut self, i: HalfInt, c: Radical) {
        let slot = self.entries.entry(i).or_default();
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn add(&self, other: &OspVector) -> OspVector {
        let mut out = self.clone();
        for (i, c) in &other.entries {
            out.add_term(*i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Radical) -> OspVector {
        let mut out = OspVector::zero(self.rep);
        for (i, v) in &self.entries {
            out.add_term(*i, v.clone() * c);
        }
        out
    }
}

pub fn act(g: OspGenerator, v: &OspVector) -> OspVector {
    act_with(BranchRule::IntegerOffset, g, v)
}

pub fn act_with(rule: BranchRule, g: OspGenerator, v: &OspVector) -> OspVector {
    let mut out = OspVector::zero(v.rep);
    for (i, c) in &v.entries {
        if let Some((t, k)) = basis_action(rule, g, v.rep, *i) {
            out.add_term(t, k * c);
        }
    }
    out
}

/// `[a, b]` for even pairs, `{a, b}` when both are odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub a: OspGenerator,
    pub b: OspGenerator,
    pub kind: BracketKind,
    /// Right-hand side as integer combination of generators.
    pub rhs: Vec<(i64, OspGenerator)>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = match self.kind {
            BracketKind::Commutator => ("[", "]"),
            BracketKind::Anticommutator => ("{", "}"),
        };
        write!(f, "{l}{},{}{r} = ", self.a, self.b)?;
        if self.rhs.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, g)) in self.rhs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}{g}")?;
        }
        Ok(())
    }
}

fn rel(a: OspGenerator, b: OspGenerator, rhs: &[(i64, OspGenerator)]) -> Relation {
    let kind = if a.is_odd() && b.is_odd() {
        BracketKind::Anticommutator
    } else {
        BracketKind::Commutator
    };
    Relation {
        a,
        b,
        kind,
        rhs: rhs.to_vec(),
    }
}

/// The osp(1|2) brackets in the normalization realized by [`basis_action`].
///
/// `sl(2)` is standard; the odd part has `{chi, chi} = 2x`, `{chi, phi} = h`,
/// `{phi, phi} = -2y`, with `[x, phi] = -chi` and `[y, chi] = -phi`.
/// Brackets forced to vanish by weight (`[x, chi]`, `[y, phi]`) are listed too.
pub fn relation_table() -> Vec<Relation> {
    use OspGenerator::*;
    vec![
        rel(H, X, &[(2, X)]),
        rel(H, Y, &[(-2, Y)]),
        rel(X, Y, &[(1, H)]),
        rel(X, Chi, &[]),
        rel(X, Phi, &[(-1, Chi)]),
        rel(Y, Chi, &[(-1, Phi)]),
        rel(Y, Phi, &[]),
        rel(H, Phi, &[(-1, Phi)]),
        rel(H, Chi, &[(1, Chi)]),
        rel(Chi, Phi, &[(1, H)]),
        rel(Chi, Chi, &[(2, X)]),
        rel(Phi, Phi, &[(-2, Y)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub relation: String,
    pub basis_index: HalfInt,
}

pub fn verify_relations(j: HalfInt) -> Vec<Violation> {
    verify_relations_with(BranchRule::IntegerOffset, &relation_table(), j)
}

pub fn verify_relations_with(rule: BranchRule, table: &[Relation], j: HalfInt) -> Vec<Violation> {
    let rep = OspIrrep::new(j);
    let mut out = Vec::new();
    for r in table {
        for i in rep.basis() {
            let v = OspVector::basis(rep, i);
            let ab = act_with(rule, r.a, &act_with(rule, r.b, &v));
            let ba = act_with(rule, r.b, &act_with(rule, r.a, &v));
            let lhs = match r.kind {
                BracketKind::Commutator => ab.add(&ba.scale(&Radical::from(-1))),
                BracketKind::Anticommutator => ab.add(&ba),
            };
            let rhs = r.rhs.iter().fold(OspVector::zero(rep), |acc, (c, g)| {
                acc.add(&act_with(rule, *g, &v).scale(&Radical::from(*c)))
            });
            if lhs != rhs {
                out.push(Violation {
                    relation: r.to_string(),
                    basis_index: i,
                });
            }
        }
    }
    out
}

/// Vector in `V(j1) (x) V(j2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OspTensorVector {
    pub left: OspIrrep,
    pub right: OspIrrep,
    entries: BTreeMap<(HalfInt, HalfInt), Radical>,
}

impl OspTensorVector {
    pub fn zero(left: OspIrrep, right: OspIrrep) -> Self {
        OspTensorVector {
            left,
            right,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(left: OspIrrep, right: OspIrrep, i1: HalfInt, i2: HalfInt) -> Self {
        assert!(left.contains(i1) && right.contains(i2));
        let mut v = Self::zero(left, right);
        v.entries.insert((i1, i2), Radical::one());
        v
    }

    pub fn entries(&self) -> &BTreeMap<(HalfInt, HalfInt), Radical> {
        &self.entries
    }

    pub fn coeff(&self, i1: HalfInt, i2: HalfInt) -> Radical {
        self.entries.get(&(i1, i2)).cloned().unwrap_or_default()
    }

    pub fn parity_of(&self, i1: HalfInt, i2: HalfInt) -> u8 {
        (self.left.parity(i1) + self.right.parity(i2)) % 2
    }

    fn add_term(&mut self, key: (HalfInt, HalfInt), c: Radical) {
        let slot = self.entries.entry(key).or_default();
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }
}

/// `g(u (x) w) = g(u) (x) w + (-1)^{|g||u|} u (x) g(w)`.
pub fn tensor_act(g: OspGenerator, v: &OspTensorVector) -> OspTensorVector {
    let rule = BranchRule::IntegerOffset;
    let mut out = OspTensorVector::zero(v.left, v.right);
    for (&(i1, i2), c) in &v.entries {
        if let Some((t, k)) = basis_action(rule, g, v.left, i1) {
            out.add_term((t, i2), k * c);
        }
        if let Some((t, k)) = basis_action(rule, g, v.right, i2) {
            let sign = if g.parity() * v.left.parity(i1) == 1 {
                -1
            } else {
                1
            };
            out.add_term((i1, t), k * c * Radical::from(sign));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OspError {
    #[error(
        "highest-weight kernels of V({j1}) (x) V({j2}) account for dimension {found}, expected {expected}"
    )]
    DecompositionMismatch {
        j1: HalfInt,
        j2: HalfInt,
        found: usize,
        expected: usize,
    },
}

/// Highest-weight vectors of weight `i` in `V(j1) (x) V(j2)`: the joint kernel
/// of `x` and `chi` on that weight space.
pub fn highest_weight_vectors(j1: HalfInt, j2: HalfInt, i: HalfInt) -> Vec<OspTensorVector> {
    let (l, r) = (OspIrrep::new(j1), OspIrrep::new(j2));
    let source: Vec<(HalfInt, HalfInt)> = l
        .basis()
        .filter_map(|a| {
            let b = i - a;
            r.contains(b).then_some((a, b))
        })
        .collect();
    if source.is_empty() {
        return vec![];
    }
    let images: Vec<[OspTensorVector; 2]> = source
        .iter()
        .map(|&(a, b)| {
            let v = OspTensorVector::basis(l, r, a, b);
            [tensor_act(OspGenerator::Chi, &v), tensor_act(OspGenerator::X, &v)]
        })
        .collect();
    let mut targets: Vec<(usize, (HalfInt, HalfInt))> = images
        .iter()
        .flat_map(|pair| {
            pair.iter()
                .enumerate()
                .flat_map(|(g, img)| img.entries.keys().map(move |k| (g, *k)))
        })
        .collect();
    targets.sort();
    targets.dedup();
    let matrix: linalg::Matrix<Radical> = targets
        .iter()
        .map(|(g, key)| {
            images
                .iter()
                .map(|pair| pair[*g].entries.get(key).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    linalg::kernel(&matrix, source.len())
        .into_iter()
        .map(|coeffs| {
            let mut v = OspTensorVector::zero(l, r);
            for (key, c) in source.iter().zip(coeffs) {
                if !c.is_zero() {
                    v.entries.insert(*key, c);
                }
            }
            v
        })
        .collect()
}

/// Decomposes `V(j1) (x) V(j2)` by extracting highest-weight vectors at each weight.
/// Returns the highest weights with multiplicity, ascending.
pub fn tensor_decompose(j1: HalfInt, j2: HalfInt) -> Result<Vec<HalfInt>, OspError> {
    let top = j1 + j2;
    let mut out: Vec<HalfInt> = top
        .descending_to(-top)
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|i| {
            let n = highest_weight_vectors(j1, j2, i).len();
            std::iter::repeat_n(i, n)
        })
        .collect();
    out.sort();
    let found: usize = out.iter().map(|k| OspIrrep::new(*k).dim()).sum();
    let expected = OspIrrep::new(j1).dim() * OspIrrep::new(j2).dim();
    if found != expected {
        return Err(OspError::DecompositionMismatch {
            j1,
            j2,
            found,
            expected,
        });
    }
    Ok(out)
}

/// `V(j1) (x) V(j2) = sum_{k = |j1 - j2|}^{j1 + j2} V(k)`, `k` in steps of 1/2.
pub fn grothendieck_product(j1: HalfInt, j2: HalfInt) -> Vec<HalfInt> {
    let mut v: Vec<HalfInt> = (j1 + j2).descending_to((j1 - j2).abs()).collect();
    v.reverse();
    v
}
