use std::cmp::Ordering;
use std::fmt;
use std::iter;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Subscript `k` of the transform `y_k`.
pub type VarIndex = usize;

/// Exponent of a single variable inside a [`Term`].
pub type Exponent = u32;

/// A power product `y_{i1}^{k1} * ... * y_{im}^{km}`.
///
/// Factors are kept sorted by strictly increasing index and every stored
/// exponent is at least one, so the representation is canonical. The empty
/// product is the constant term `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Term {
    factors: Vec<(VarIndex, Exponent)>,
}

impl Term {
    pub fn one() -> Self {
        Term::default()
    }

    pub fn var(index: VarIndex) -> Self {
        Term {
            factors: vec![(index, 1)],
        }
    }

    pub fn pow(index: VarIndex, exp: Exponent) -> Self {
        Term::from_factors([(index, exp)])
    }

    /// Builds a term from arbitrary `(index, exponent)` pairs, merging repeated
    /// indices and dropping zero exponents.
    pub fn from_factors(factors: impl IntoIterator<Item = (VarIndex, Exponent)>) -> Self {
        let mut v: Vec<(VarIndex, Exponent)> = factors.into_iter().filter(|f| f.1 > 0).collect();
        v.sort_unstable_by_key(|f| f.0);
        let mut merged: Vec<(VarIndex, Exponent)> = Vec::with_capacity(v.len());
        for (k, e) in v {
            match merged.last_mut() {
                Some(last) if last.0 == k => {
                    last.1 = last.1.checked_add(e).expect("exponent overflow");
                }
                _ => merged.push((k, e)),
            }
        }
        Term { factors: merged }
    }

    /// Product of single variables, e.g. `Term::product(&[0, 1])` is `y0*y1`.
    pub fn product(indices: &[VarIndex]) -> Self {
        Term::from_factors(indices.iter().map(|&k| (k, 1)))
    }

    /// `(index, exponent)` pairs in increasing index order.
    pub fn factors(&self) -> &[(VarIndex, Exponent)] {
        &self.factors
    }

    /// Variable indices repeated according to multiplicity, ascending.
    pub fn index_sequence(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.factors
            .iter()
            .flat_map(|&(k, e)| iter::repeat_n(k, e as usize))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, index: VarIndex) -> Exponent {
        self.factors
            .binary_search_by_key(&index, |f| f.0)
            .map(|pos| self.factors[pos].1)
            .unwrap_or(0)
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|f| u64::from(f.1)).sum()
    }

    pub fn min_index(&self) -> Option<VarIndex> {
        self.factors.first().map(|f| f.0)
    }

    /// Highest variable index occurring in the term.
    pub fn order(&self) -> Option<VarIndex> {
        self.factors.last().map(|f| f.0)
    }

    /// Effective order: highest minus lowest variable index. The constant term
    /// has effective order 0.
    pub fn eord(&self) -> usize {
        match (self.min_index(), self.order()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// The transform `sigma^k` of the term.
    pub fn shift(&self, k: usize) -> Result<Term> {
        let factors = self
            .factors
            .iter()
            .map(|&(i, e)| {
                i.checked_add(k)
                    .map(|j| (j, e))
                    .ok_or_else(|| Error::IndexOverflow(format!("y{i} shifted by {k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Term { factors })
    }

    /// Inverse shift; `None` if some index would become negative.
    pub fn unshift(&self, k: usize) -> Option<Term> {
        let factors = self
            .factors
            .iter()
            .map(|&(i, e)| i.checked_sub(k).map(|j| (j, e)))
            .collect::<Option<Vec<_>>>()?;
        Some(Term { factors })
    }

    pub fn mul(&self, other: &Term) -> Term {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).expect("exponent overflow");
                    out.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Term { factors: out }
    }

    /// All terms of exactly `degree` in the variables `y0..=y_max_index`,
    /// in canonical order.
    pub fn all_of_degree(degree: u64, max_index: VarIndex) -> Vec<Term> {
        fn rec(
            start: VarIndex,
            max_index: VarIndex,
            left: u64,
            acc: &mut Vec<VarIndex>,
            out: &mut Vec<Term>,
        ) {
            if left == 0 {
                out.push(Term::product(acc));
                return;
            }
            for k in start..=max_index {
                acc.push(k);
                rec(k, max_index, left - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, max_index, degree, &mut Vec::new(), &mut out);
        out
    }
}

/// Graded order: lower degree first, then lexicographic on the ascending
/// index-with-multiplicity sequence.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.index_sequence().cmp(other.index_sequence()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (n, &(k, e)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "y{k}")?;
            } else {
                write!(f, "y{k}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
