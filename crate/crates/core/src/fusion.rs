//! The fusion ring spanned by `b(m)`, `m` odd, with structure constants read
//! off the Zhu polynomials, and its comparison with the osp(1|2) representation ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::osp::{grothendieck_product, tensor_decompose};
use crate::scalar::HalfInt;
use crate::zhu::{Parity, ZhuError, ZhuTables};

/// Formal sum of generators `b(m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionElement(BTreeMap<u32, u64>);

impl FusionElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `b(m)`. Panics on an even label.
    pub fn generator(m: u32) -> Self {
        assert!(m % 2 == 1, "b({m}) needs an odd label");
        FusionElement(BTreeMap::from([(m, 1)]))
    }

    pub fn one() -> Self {
        Self::generator(1)
    }

    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Self {
        let mut e = Self::zero();
        for m in labels {
            e.add_term(m, 1);
        }
        e
    }

    pub fn add_term(&mut self, m: u32, k: u64) {
        assert!(m % 2 == 1, "b({m}) needs an odd label");
        if k > 0 {
            *self.0.entry(m).or_insert(0) += k;
        }
    }

    pub fn coeff(&self, m: u32) -> u64 {
        self.0.get(&m).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.0.iter().map(|(&m, &k)| (m, k))
    }

    /// Total number of summands, counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The labels with multiplicity, ascending.
    pub fn labels(&self) -> Vec<u32> {
        self.terms()
            .flat_map(|(m, k)| std::iter::repeat_n(m, k as usize))
            .collect()
    }

    /// Image under `b(m) -> V((m-1)/4)`, ascending.
    pub fn to_osp(&self) -> Vec<HalfInt> {
        self.labels().into_iter().map(to_osp).collect()
    }
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, k)| if k == 1 { format!("b({m})") } else { format!("{k}b({m})") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn to_osp(m: u32) -> HalfInt {
    assert!(m % 2 == 1, "b({m}) needs an odd label");
    HalfInt::from_twice(i64::from((m - 1) / 2))
}

/// Lazily filled generator products over a shared [`ZhuTables`].
#[derive(Default)]
pub struct FusionRing {
    tables: ZhuTables,
    products: Mutex<BTreeMap<(u32, u32), Arc<FusionElement>>>,
}

impl FusionRing {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tables(&self) -> &ZhuTables {
        &self.tables
    }

    /// `b(q) x b(r) = sum_s dim I(s; q, r) b(s)`.
    pub fn product(&self, q: u32, r: u32) -> Result<Arc<FusionElement>, ZhuError> {
        let key = (q.min(r), q.max(r));
        if let Some(p) = self.products.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let mut e = FusionElement::zero();
        for s in self.tables.fusion_support(q, r)? {
            e.add_term(s as u32, 1);
        }
        let e = Arc::new(e);
        self.products.lock().unwrap().insert(key, e.clone());
        Ok(e)
    }

    pub fn multiply(&self, a: &FusionElement, b: &FusionElement) -> Result<FusionElement, ZhuError> {
        let mut out = FusionElement::zero();
        for (q, k) in a.terms() {
            for (r, l) in b.terms() {
                for (s, n) in self.product(q, r)?.terms() {
                    out.add_term(s, k * l * n);
                }
            }
        }
        Ok(out)
    }

    /// Generator products for all odd `q, r <= bound`, computed in parallel.
    pub fn table(&self, bound: u32) -> Result<FusionTable, ZhuError> {
        let labels = odd_labels(bound);
        // singular vectors first, one per label, so the pairs do not race on them
        labels
            .par_iter()
            .try_for_each(|&q| self.tables.vectors().get(q).map(|_| ()))?;
        let pairs: Vec<(u32, u32)> = labels
            .iter()
            .flat_map(|&q| labels.iter().map(move |&r| (q, r)))
            .collect();
        let entries = pairs
            .par_iter()
            .map(|&(q, r)| self.product(q, r).map(|p| ((q, r), (*p).clone())))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(FusionTable { bound, entries })
    }

    /// Commutativity, `b(1)` as identity, and associativity on generator triples.
    pub fn verify_ring_axioms(&self, bound: u32) -> Result<Vec<String>, ZhuError> {
        let labels = odd_labels(bound);
        let mut failures = Vec::new();
        for &q in &labels {
            if *self.product(1, q)? != FusionElement::generator(q) {
                failures.push(format!("identity b(1) x b({q})"));
            }
            for &r in &labels {
                let (a, b) = (self.tables.fusion_support(q, r)?, self.tables.fusion_support(r, q)?);
                if a != b {
                    failures.push(format!("commutativity b({q}) x b({r})"));
                }
            }
        }
        let mut triples = Vec::new();
        for &q in &labels {
            for &r in &labels {
                for &s in &labels {
                    triples.push((q, r, s));
                }
            }
        }
        let assoc: Vec<Option<String>> = triples
            .par_iter()
            .map(|&(q, r, s)| {
                let (bq, br, bs) = (
                    FusionElement::generator(q),
                    FusionElement::generator(r),
                    FusionElement::generator(s),
                );
                let left = self.multiply(&self.multiply(&bq, &br)?, &bs)?;
                let right = self.multiply(&bq, &self.multiply(&br, &bs)?)?;
                Ok((left != right).then(|| format!("associativity b({q}) b({r}) b({s})")))
            })
            .collect::<Result<_, ZhuError>>()?;
        failures.extend(assoc.into_iter().flatten());
        Ok(failures)
    }

    /// Parity labels of `b(q) x b(r)` for `q >= r`, ascending in `s`.
    pub fn parity(&self, q: u32, r: u32) -> Result<Vec<(u32, Parity)>, ZhuError> {
        self.tables
            .fusion_support(q, r)?
            .into_iter()
            .map(|s| Ok((s as u32, self.tables.fusion_parity(q, r, s)?)))
            .collect()
    }
}

pub fn odd_labels(bound: u32) -> Vec<u32> {
    (1..=bound).step_by(2).collect()
}

/// Cayley table of the generators up to a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    pub bound: u32,
    pub entries: BTreeMap<(u32, u32), FusionElement>,
}

impl FusionTable {
    pub fn get(&self, q: u32, r: u32) -> Option<&FusionElement> {
        self.entries.get(&(q, r))
    }

    /// Aligned text matrix, one row per `q`.
    pub fn to_text(&self) -> String {
        let labels = odd_labels(self.bound);
        let cells: Vec<Vec<String>> = labels
            .iter()
            .map(|&q| {
                labels
                    .iter()
                    .map(|&r| self.get(q, r).map(ToString::to_string).unwrap_or_default())
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = format!("{:>6} |", "");
        for r in &labels {
            out.push_str(&format!(" {:<width$} |", format!("b({r})")));
        }
        out.push('\n');
        for (q, row) in labels.iter().zip(&cells) {
            out.push_str(&format!("{:>6} |", format!("b({q})")));
            for c in row {
                out.push_str(&format!(" {c:<width$} |"));
            }
            out.push('\n');
        }
        out
    }
}

/// One `b(q) x b(r)` row of the JSON table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntryJson {
    pub s: u32,
    pub dim: u64,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductJson {
    pub q: u32,
    pub r: u32,
    pub entries: Vec<TableEntryJson>,
}

impl FusionRing {
    /// JSON rows for every pair in a table; parity is taken with the larger label first.
    pub fn table_json(&self, table: &FusionTable) -> Result<Vec<ProductJson>, ZhuError> {
        table
            .entries
            .iter()
            .map(|(&(q, r), e)| {
                let (hi, lo) = (q.max(r), q.min(r));
                let entries = e
                    .terms()
                    .map(|(s, k)| {
                        Ok(TableEntryJson {
                            s,
                            dim: k,
                            parity: self.tables.fusion_parity(hi, lo, i64::from(s))?,
                        })
                    })
                    .collect::<Result<_, ZhuError>>()?;
                Ok(ProductJson { q, r, entries })
            })
            .collect()
    }
}

/// Mismatches between a fusion table and the osp side, empty when the
/// map `b(m) -> V((m-1)/4)` is a ring isomorphism on the table.
///
/// The osp products are also decomposed explicitly whenever `2j <= 5`.
pub fn isomorphism_failures(table: &FusionTable) -> Vec<String> {
    let mut failures = Vec::new();
    for (&(q, r), e) in &table.entries {
        let (j1, j2) = (to_osp(q), to_osp(r));
        let expected = grothendieck_product(j1, j2);
        if e.to_osp() != expected {
            failures.push(format!("b({q}) x b({r}) image differs from V({j1}) x V({j2})"));
        }
        if j1.twice() <= 5 && j2.twice() <= 5 {
            match tensor_decompose(j1, j2) {
                Ok(d) if d == expected => {}
                _ => failures.push(format!("tensor decomposition of V({j1}) x V({j2})")),
            }
        }
    }
    failures
}

pub fn verify_isomorphism_table(table: &FusionTable) -> bool {
    isomorphism_failures(table).is_empty()
}

pub fn verify_isomorphism(bound: u32) -> Result<bool, ZhuError> {
    let ring = FusionRing::new();
    Ok(verify_isomorphism_table(&ring.table(bound)?))
}

pub fn verify_ring_axioms(bound: u32) -> Result<bool, ZhuError> {
    Ok(FusionRing::new().verify_ring_axioms(bound)?.is_empty())
}

pub fn multiply(a: &FusionElement, b: &FusionElement) -> Result<FusionElement, ZhuError> {
    FusionRing::new().multiply(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(labels: &[u32]) -> FusionElement {
        FusionElement::from_labels(labels.iter().copied())
    }

    #[test]
    fn small_products() {
        let ring = FusionRing::new();
        let g = FusionElement::generator;
        assert_eq!(ring.multiply(&g(3), &g(3)).unwrap(), b(&[1, 3, 5]));
        assert_eq!(ring.multiply(&g(5), &g(3)).unwrap(), b(&[3, 5, 7]));
        for m in [1, 3, 5, 7] {
            assert_eq!(ring.multiply(&g(1), &g(m)).unwrap(), g(m));
        }
        let sum = b(&[1, 3]);
        assert_eq!(ring.multiply(&sum, &g(3)).unwrap(), b(&[1, 3, 3, 5]));
    }

    #[test]
    fn osp_labels() {
        assert_eq!(to_osp(1), HalfInt::ZERO);
        assert_eq!(to_osp(3), HalfInt::HALF);
        assert_eq!(to_osp(7), HalfInt::from_twice(3));
    }

    #[test]
    fn display() {
        let mut e = b(&[5, 1]);
        e.add_term(3, 2);
        assert_eq!(e.to_string(), "b(1) + 2b(3) + b(5)");
        assert_eq!(FusionElement::zero().to_string(), "0");
    }

    #[test]
    fn isomorphism_small_and_mutation() {
        let ring = FusionRing::new();
        let mut t = ring.table(5).unwrap();
        assert_eq!(t.entries.len(), 9);
        assert_eq!(isomorphism_failures(&t), Vec::<String>::new());
        t.entries.get_mut(&(3, 5)).unwrap().add_term(9, 1);
        assert!(!verify_isomorphism_table(&t));
    }

    #[test]
    fn axioms_small() {
        assert!(FusionRing::new().verify_ring_axioms(5).unwrap().is_empty());
    }

    #[test]
    fn parity_alternates() {
        let ring = FusionRing::new();
        let p = ring.parity(5, 3).unwrap();
        assert_eq!(
            p,
            vec![(3, Parity::Even), (5, Parity::Odd), (7, Parity::Even)]
        );
    }

    #[test]
    fn text_table_is_aligned() {
        let t = FusionRing::new().table(3).unwrap();
        let text = t.to_text();
        let widths: Vec<usize> = text.lines().map(str::len).collect();
        assert_eq!(widths.len(), 3);
        assert!(widths.windows(2).all(|w| w[0] == w[1]));
    }
}
