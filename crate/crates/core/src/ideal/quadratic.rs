//! Quadratic forms: Gram matrices, exact rank, and splitting into linear forms.
//!
//! Over a field of characteristic other than 2, a nonzero quadratic form is a
//! product of two linear forms over the algebraic closure iff its Gram matrix
//! has rank at most 2. Rank is computed by fraction-free elimination; forms of
//! rank 1 or 2 are split explicitly, or reported as needing a square root.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::rational_rank;
use crate::poly::{
    format_coefficient, rational, serialize_coefficient, Coefficient, DiffPoly, Term, VarIndex,
};
use crate::witness::{make_a, ScanReport, Violation};

/// The arithmetic needed to split a quadratic form, over a field of
/// characteristic other than 2.
pub trait ScalarField {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// A square root inside the field, if there is one.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl ScalarField for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let (n, d) = (a.numer().sqrt(), a.denom().sqrt());
        (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
    }
}

/// Result of splitting a form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum FormSplit<E> {
    Zero,
    /// `q = scalar * left * right` with coefficient vectors over the support.
    Product {
        scalar: E,
        left: Vec<E>,
        right: Vec<E>,
    },
    /// `q` splits only after adjoining a square root of `discriminant`.
    NeedsSquareRoot {
        discriminant: E,
    },
    /// Rank at least 3.
    Irreducible,
}

fn dot_form<F: ScalarField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    a.iter()
        .map(|x| b.iter().map(|y| f.mul(x, y)).collect())
        .collect()
}

/// Splits the quadratic form with symmetric Gram matrix `g` into linear
/// factors where possible.
pub fn split_form<F: ScalarField>(f: &F, g: &[Vec<F::Elem>]) -> FormSplit<F::Elem> {
    let n = g.len();
    if let Some(i) = (0..n).find(|&i| !f.is_zero(&g[i][i])) {
        return split_with_pivot(f, g, i);
    }
    let Some((i, j)) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !f.is_zero(&g[i][j]))
    else {
        return FormSplit::Zero;
    };
    // Substitute y_i -> y_i + y_j: the new Gram matrix is T^t G T with
    // T = I + E_ij, which puts 2 g_ij on the diagonal at j.
    let mut h = g.to_vec();
    for row in h.iter_mut() {
        row[j] = f.add(&row[j], &row[i]);
    }
    let row_i = h[i].clone();
    for (x, y) in h[j].iter_mut().zip(&row_i) {
        *x = f.add(x, y);
    }
    match split_with_pivot(f, &h, j) {
        FormSplit::Product {
            scalar,
            mut left,
            mut right,
        } => {
            // undo the substitution: y_i -> y_i - y_j
            for l in [&mut left, &mut right] {
                let v = f.sub(&l[j], &l[i]);
                l[j] = v;
            }
            FormSplit::Product {
                scalar,
                left,
                right,
            }
        }
        other => other,
    }
}

/// Completes the square on `y_i`: with `a = g_ii` and `P = row_i . y`,
/// `a q = P^2 - R` where `R = r r^t - a G` no longer involves `y_i`.
fn split_with_pivot<F: ScalarField>(f: &F, g: &[Vec<F::Elem>], i: usize) -> FormSplit<F::Elem> {
    let n = g.len();
    let a = g[i][i].clone();
    let row = g[i].clone();
    let rr = dot_form(f, &row, &row);
    let r: Vec<Vec<F::Elem>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| f.sub(&rr[x][y], &f.mul(&a, &g[x][y])))
                .collect()
        })
        .collect();
    let a_inv = f.inv(&a);
    let Some(k) = (0..n).find(|&k| !f.is_zero(&r[k][k])) else {
        if r.iter().flatten().all(|x| f.is_zero(x)) {
            return FormSplit::Product {
                scalar: a_inv,
                left: row.clone(),
                right: row,
            };
        }
        // nonzero with zero diagonal: rank of R is at least 2
        return FormSplit::Irreducible;
    };
    let b = r[k][k].clone();
    let m = r[k].clone();
    // R must equal (1/b) m m^t, i.e. have rank 1
    let mm = dot_form(f, &m, &m);
    let rank_one = (0..n).all(|x| (0..n).all(|y| f.mul(&r[x][y], &b) == mm[x][y]));
    if !rank_one {
        return FormSplit::Irreducible;
    }
    // a q = P^2 - (1/b) M^2; need s with s^2 = 1/b
    let Some(t) = f.sqrt(&b) else {
        return FormSplit::NeedsSquareRoot { discriminant: b };
    };
    let s = f.inv(&t);
    let sm: Vec<F::Elem> = m.iter().map(|x| f.mul(&s, x)).collect();
    let left = row.iter().zip(&sm).map(|(p, x)| f.sub(p, x)).collect();
    let right = row.iter().zip(&sm).map(|(p, x)| f.add(p, x)).collect();
    FormSplit::Product {
        scalar: a_inv,
        left,
        right,
    }
}

fn serialize_matrix<S: Serializer>(
    m: &[Vec<Coefficient>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let shown: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(format_coefficient).collect())
        .collect();
    shown.serialize(s)
}

/// Symmetric matrix of a quadratic form over its support: the entry for
/// `y_a * y_b` is the coefficient when `a == b` and half of it otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub support: Vec<VarIndex>,
    #[serde(serialize_with = "serialize_matrix")]
    pub entries: Vec<Vec<Coefficient>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.support.len()
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        rational_rank(&self.entries)
    }

    /// The linear form `sum v_i y_{support_i}`.
    pub fn linear_form(&self, v: &[Coefficient]) -> DiffPoly {
        DiffPoly::from_terms(
            self.support
                .iter()
                .zip(v)
                .map(|(&k, c)| (Term::var(k), c.clone())),
        )
    }
}

pub(crate) fn require_quadratic(q: &DiffPoly) -> Result<()> {
    if q.is_zero() || q.homogeneous_degree() != Some(2) {
        return Err(Error::Contract(format!(
            "expected a nonzero homogeneous quadratic, got {q}"
        )));
    }
    Ok(())
}

pub fn gram_matrix(q: &DiffPoly) -> Result<GramMatrix> {
    require_quadratic(q)?;
    let support = q.support();
    let pos = |k: VarIndex| support.binary_search(&k).expect("index from support");
    let n = support.len();
    let mut entries = vec![vec![Coefficient::zero(); n]; n];
    let half = rational(1, 2);
    for (t, c) in q.terms() {
        let idx: Vec<usize> = t.index_sequence().map(pos).collect();
        let (a, b) = (idx[0], idx[1]);
        if a == b {
            entries[a][a] = c.clone();
        } else {
            entries[a][b] = c * &half;
            entries[b][a] = c * &half;
        }
    }
    Ok(GramMatrix { support, entries })
}

/// Outcome of [`factor_quadratic`] over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadraticFactorization {
    /// `q = scalar * left * right`, each factor monic in its lowest variable.
    Product {
        rank: usize,
        #[serde(serialize_with = "serialize_coefficient")]
        scalar: Coefficient,
        left: DiffPoly,
        right: DiffPoly,
    },
    /// Rank 2 but the factors need `sqrt(discriminant)`.
    QuadraticExtension {
        rank: usize,
        #[serde(serialize_with = "serialize_coefficient")]
        discriminant: Coefficient,
    },
    /// Rank at least 3: no factorization over any field extension.
    Irreducible { rank: usize },
}

impl QuadraticFactorization {
    pub fn rank(&self) -> usize {
        match self {
            QuadraticFactorization::Product { rank, .. }
            | QuadraticFactorization::QuadraticExtension { rank, .. }
            | QuadraticFactorization::Irreducible { rank } => *rank,
        }
    }

    pub fn is_rational_product(&self) -> bool {
        matches!(self, QuadraticFactorization::Product { .. })
    }
}

fn monic(p: &DiffPoly) -> (Coefficient, DiffPoly) {
    let lead = p
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .expect("nonzero factor");
    (lead.clone(), p.scale(&lead.recip()))
}

/// Splits a nonzero homogeneous quadratic over the rationals, or certifies via
/// Gram rank that no split exists.
pub fn factor_quadratic(q: &DiffPoly) -> Result<QuadraticFactorization> {
    let g = gram_matrix(q)?;
    let rank = g.rank();
    if rank >= 3 {
        return Ok(QuadraticFactorization::Irreducible { rank });
    }
    match split_form(&Rationals, &g.entries) {
        FormSplit::Product {
            scalar,
            left,
            right,
        } => {
            let (cl, left) = monic(&g.linear_form(&left));
            let (cr, right) = monic(&g.linear_form(&right));
            let scalar = scalar * cl * cr;
            let (left, right) = if left <= right {
                (left, right)
            } else {
                (right, left)
            };
            if (&left * &right).scale(&scalar) != *q {
                return Err(Error::Internal(format!(
                    "factorization of {q} does not multiply back"
                )));
            }
            Ok(QuadraticFactorization::Product {
                rank,
                scalar,
                left,
                right,
            })
        }
        FormSplit::NeedsSquareRoot { discriminant } if rank == 2 => {
            Ok(QuadraticFactorization::QuadraticExtension { rank, discriminant })
        }
        other => Err(Error::Internal(format!(
            "rank {rank} form {q} split as {other:?}"
        ))),
    }
}

/// A random nonzero combination `sum lambda_(i,j) sigma^j(A(i))` with
/// `1 <= i <= m`, `0 <= j <= max_shift`, numerators in `[-9, 9] \ {0}` and
/// denominators in `[1, 9]`, using between 1 and 6 distinct basis elements.
pub fn random_slice_element(rng: &mut impl Rng, m: u32, max_shift: usize) -> Result<DiffPoly> {
    let mut slots: Vec<(u32, usize)> = (1..=m)
        .flat_map(|i| (0..=max_shift).map(move |j| (i, j)))
        .collect();
    slots.shuffle(rng);
    let count = rng.gen_range(1..=6usize).min(slots.len());
    let mut out = DiffPoly::zero();
    for &(i, j) in &slots[..count] {
        let num = loop {
            let v: i64 = rng.gen_range(-9..=9);
            if v != 0 {
                break v;
            }
        };
        let den: i64 = rng.gen_range(1..=9);
        out = &out + &make_a(i)?.shift(j)?.scale(&rational(num, den));
    }
    Ok(out)
}

/// Draws `samples` seeded random slice elements and checks each has Gram rank
/// at least 3.
pub fn irreducibility_scan(
    m: u32,
    max_shift: usize,
    samples: usize,
    seed: u64,
) -> Result<ScanReport> {
    if m == 0 {
        return Err(Error::Contract("irreducibility scan needs m >= 1".into()));
    }
    let start = std::time::Instant::now();
    let mut report = ScanReport::new(
        "irreducible",
        json!({ "m": m, "shifts": max_shift, "samples": samples, "seed": seed }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let queries: Vec<DiffPoly> = (0..samples)
        .map(|_| random_slice_element(&mut rng, m, max_shift))
        .collect::<Result<_>>()?;
    let ranks: Vec<usize> = queries
        .par_iter()
        .map(|q| gram_matrix(q).map(|g| g.rank()))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    for (n, (q, &r)) in queries.iter().zip(&ranks).enumerate() {
        if r < 3 {
            found.push(Violation::new(
                "Gram rank >= 3",
                vec![n as u64, r as u64],
                q.to_string(),
            ));
        }
    }
    report.checked = samples as u64;
    report.absorb(found);
    let min_rank = ranks.iter().min().copied();
    report.summary = json!({
        "min_rank": min_rank,
        "samples": queries
            .iter()
            .zip(&ranks)
            .map(|(q, r)| json!({ "poly": q.to_string(), "rank": r }))
            .collect::<Vec<_>>(),
    });
    report.elapsed = start.elapsed();
    Ok(report)
}
