//! Exact sparse difference polynomials.

mod parse;
mod term;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use parse::parse;
pub use term::{Exponent, Term, VarIndex};

/// Exact rational coefficient. `BigRational` keeps itself in lowest terms with
/// a positive denominator.
pub type Coefficient = BigRational;

pub fn rational(num: i64, den: i64) -> Coefficient {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a coefficient as `n` or `n/d`.
pub fn format_coefficient(c: &Coefficient) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Serializes a coefficient as its `n/d` string.
pub fn serialize_coefficient<S: Serializer>(
    c: &Coefficient,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_coefficient(c))
}

/// A difference polynomial: a finite sum of [`Term`]s with nonzero rational
/// coefficients. Zero coefficients are never stored, so structural equality is
/// polynomial equality. Iteration follows the canonical term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Term, Coefficient>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::monomial(Term::one(), Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        DiffPoly::monomial(Term::one(), c)
    }

    pub fn var(index: VarIndex) -> Self {
        DiffPoly::monomial(Term::var(index), Coefficient::one())
    }

    pub fn monomial(term: Term, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(term, c);
        }
        DiffPoly { terms }
    }

    /// Sums the given `(term, coefficient)` pairs; repeated terms are combined
    /// and zero results dropped.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Term, Coefficient)>) -> Self {
        let mut p = DiffPoly::zero();
        for (t, c) in pairs {
            p.add_term(t, c);
        }
        p
    }

    fn add_term(&mut self, t: Term, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Rebuilds the polynomial from its term list. Always equal to `self`.
    pub fn renormalized(&self) -> Self {
        DiffPoly::from_terms(self.terms.iter().map(|(t, c)| (t.clone(), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Term, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Term) -> Coefficient {
        self.terms.get(t).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn contains_term(&self, t: &Term) -> bool {
        self.terms.contains_key(t)
    }

    /// Highest term degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Term::degree).max()
    }

    /// Lowest term degree; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().map(Term::degree).min()
    }

    /// `Some(d)` when every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let d = self.min_degree()?;
        (self.degree() == Some(d)).then_some(d)
    }

    /// Homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u64, DiffPoly> {
        let mut out: BTreeMap<u64, DiffPoly> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(t.degree())
                .or_default()
                .terms
                .insert(t.clone(), c.clone());
        }
        out
    }

    pub fn max_index(&self) -> Option<VarIndex> {
        self.terms.keys().filter_map(Term::order).max()
    }

    pub fn min_index(&self) -> Option<VarIndex> {
        self.terms.keys().filter_map(Term::min_index).min()
    }

    /// Largest effective order among the terms.
    pub fn max_eord(&self) -> Option<usize> {
        self.terms.keys().map(Term::eord).max()
    }

    /// Sorted list of variable indices that occur.
    pub fn support(&self) -> Vec<VarIndex> {
        let mut v: Vec<VarIndex> = self
            .terms
            .keys()
            .flat_map(|t| t.factors().iter().map(|f| f.0))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The transform `sigma^k(p)`: every `y_i` becomes `y_{i+k}`.
    pub fn shift(&self, k: usize) -> Result<DiffPoly> {
        if k == 0 {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| Ok((t.shift(k)?, c.clone())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(DiffPoly { terms })
    }

    /// Shifts the polynomial down so that its lowest index is 0. Returns the
    /// normalized polynomial together with the amount removed.
    pub fn unshifted(&self) -> (DiffPoly, usize) {
        let Some(k) = self.min_index() else {
            return (self.clone(), 0);
        };
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (t.unshift(k).expect("k is the minimum index"), c.clone()))
            .collect();
        (DiffPoly { terms }, k)
    }

    pub fn scale(&self, c: &Coefficient) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        let terms = self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect();
        DiffPoly { terms }
    }

    pub fn mul_term(&self, t: &Term, c: &Coefficient) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        let terms = self.terms.iter().map(|(s, a)| (s.mul(t), a * c)).collect();
        DiffPoly { terms }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        (0..e).fold(DiffPoly::one(), |acc, _| &acc * self)
    }

    /// Replaces `y_index` by `replacement` everywhere.
    pub fn substitute(&self, index: VarIndex, replacement: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (t, c) in &self.terms {
            let e = t.exponent(index);
            let rest = Term::from_factors(t.factors().iter().copied().filter(|f| f.0 != index));
            let part = replacement.pow(e).mul_term(&rest, c);
            out = &out + &part;
        }
        out
    }

    /// Leading entry in canonical order (the largest term).
    pub fn leading(&self) -> Option<(&Term, &Coefficient)> {
        self.terms.iter().next_back()
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if t.is_one() {
                f.write_str(&format_coefficient(&a))?;
            } else if a.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{}*{t}", format_coefficient(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}

impl FromStr for DiffPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl Serialize for DiffPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<Term> for DiffPoly {
    fn from(t: Term) -> Self {
        DiffPoly::monomial(t, Coefficient::one())
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;

    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (t, c) in &small.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;

    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;

    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                out.add_term(s.mul(t), a * b);
            }
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;

    fn neg(self) -> DiffPoly {
        let terms = self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect();
        DiffPoly { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DiffPoly {
            type Output = DiffPoly;

            fn $m(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DiffPoly {
    type Output = DiffPoly;

    fn neg(self) -> DiffPoly {
        -&self
    }
}
