//! Prime fields and the brute-force factorization oracle.
//!
//! The oracle enumerates every pair of linear forms over `F_p` on the support
//! of a quadratic and tests the product directly. It shares no code with the
//! Gram-rank route and serves as its independent cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::quadratic::{require_quadratic, split_form, FormSplit, ScalarField};
use crate::error::{Error, Result};
use crate::poly::{Coefficient, DiffPoly, Term, VarIndex};

/// Largest prime accepted by the oracle and the mod-p splitter.
pub const MAX_PRIME: u64 = 65_521;

/// Largest support the oracle will enumerate over; the cost is about
/// `p^(2 * support)`.
pub const MAX_ORACLE_SUPPORT: usize = 6;

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Contract(format!(
                "{p} is not a prime in [2, {MAX_PRIME}]"
            )));
        }
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// Image of a rational number, `None` if the denominator is divisible by p.
    pub fn reduce(&self, c: &Coefficient) -> Option<u64> {
        let p = BigInt::from(self.p);
        let den = c.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = c.numer().mod_floor(&p).to_u64()?;
        Some(num * self.inv(&den) % self.p)
    }

    /// Coefficients of `q` mod p with zeros dropped.
    pub fn reduce_poly(&self, q: &DiffPoly) -> Result<BTreeMap<Term, u64>> {
        let mut out = BTreeMap::new();
        for (t, c) in q.terms() {
            let v = self.reduce(c).ok_or_else(|| {
                Error::Contract(format!(
                    "coefficient of {t} in {q} is not invertible mod {}",
                    self.p
                ))
            })?;
            if v != 0 {
                out.insert(t.clone(), v);
            }
        }
        Ok(out)
    }
}

impl ScalarField for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        (0..self.p).find(|x| x * x % self.p == *a)
    }
}

/// `q = scalar * left * right` over `F_p`, coefficient vectors indexed like
/// `support`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModPFactorization {
    pub prime: u64,
    pub support: Vec<VarIndex>,
    pub scalar: u64,
    pub left: Vec<u64>,
    pub right: Vec<u64>,
}

impl ModPFactorization {
    /// Expands `scalar * left * right` into reduced coefficients.
    pub fn expand(&self) -> BTreeMap<Term, u64> {
        let p = self.prime;
        let mut out: BTreeMap<Term, u64> = BTreeMap::new();
        for (a, &la) in self.support.iter().zip(&self.left) {
            for (b, &rb) in self.support.iter().zip(&self.right) {
                let v = self.scalar * la % p * rb % p;
                if v != 0 {
                    let e = out.entry(Term::product(&[*a, *b])).or_insert(0);
                    *e = (*e + v) % p;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// Packs the reduced quadratic into upper-triangular coefficient slots over
/// its support.
fn upper_coefficients(reduced: &BTreeMap<Term, u64>, support: &[VarIndex]) -> Vec<u64> {
    let n = support.len();
    let mut out = vec![0u64; n * (n + 1) / 2];
    for (t, &c) in reduced {
        let idx: Vec<usize> = t
            .index_sequence()
            .map(|k| support.binary_search(&k).expect("support index"))
            .collect();
        out[slot(n, idx[0], idx[1])] = c;
    }
    out
}

fn slot(n: usize, i: usize, j: usize) -> usize {
    // row-major upper triangle
    i * n - i * (i + 1) / 2 + j
}

fn odometer(v: &mut [u64], p: u64) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < p {
            return true;
        }
        *x = 0;
    }
    false
}

/// Exhaustively searches for nonzero linear forms `L1, L2` over `F_p` on the
/// support of `q` with `L1 * L2 = q (mod p)`. `L1` is enumerated with leading
/// coefficient 1, which loses no factorizations up to scaling.
///
/// Returns `None` when no pair exists, in particular when `q` vanishes mod p.
pub fn finite_field_factor_oracle(q: &DiffPoly, prime: u64) -> Result<Option<ModPFactorization>> {
    require_quadratic(q)?;
    let f = Fp::new(prime)?;
    let support = q.support();
    let n = support.len();
    if n > MAX_ORACLE_SUPPORT {
        return Err(Error::Contract(format!(
            "oracle support is limited to {MAX_ORACLE_SUPPORT} variables, got {n}"
        )));
    }
    let reduced = f.reduce_poly(q)?;
    if reduced.is_empty() {
        return Ok(None);
    }
    let target = upper_coefficients(&reduced, &support);
    let p = prime;
    let mut left = vec![0u64; n];
    while odometer(&mut left, p) {
        let lead = left.iter().rposition(|&x| x != 0).expect("nonzero");
        if left[lead] != 1 {
            continue;
        }
        let mut right = vec![0u64; n];
        'right: while odometer(&mut right, p) {
            for i in 0..n {
                for j in i..n {
                    let v = if i == j {
                        left[i] * right[i] % p
                    } else {
                        (left[i] * right[j] + left[j] * right[i]) % p
                    };
                    if v != target[slot(n, i, j)] {
                        continue 'right;
                    }
                }
            }
            let found = ModPFactorization {
                prime,
                support: support.clone(),
                scalar: 1,
                left: left.clone(),
                right: right.clone(),
            };
            debug_assert_eq!(found.expand(), reduced);
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Gram-rank splitting of `q` reduced mod an odd prime.
///
/// Returns `None` when the reduction admits no split into linear forms over
/// `F_p` (including when it vanishes).
pub fn factor_quadratic_mod_p(q: &DiffPoly, prime: u64) -> Result<Option<ModPFactorization>> {
    require_quadratic(q)?;
    let f = Fp::new(prime)?;
    if prime == 2 {
        return Err(Error::Contract(
            "Gram splitting needs an odd prime; use the oracle in characteristic 2".into(),
        ));
    }
    let support = q.support();
    let n = support.len();
    let reduced = f.reduce_poly(q)?;
    let half = f.inv(&2);
    let mut g = vec![vec![0u64; n]; n];
    for (t, &c) in &reduced {
        let idx: Vec<usize> = t
            .index_sequence()
            .map(|k| support.binary_search(&k).expect("support index"))
            .collect();
        let (a, b) = (idx[0], idx[1]);
        if a == b {
            g[a][a] = c;
        } else {
            g[a][b] = c * half % prime;
            g[b][a] = g[a][b];
        }
    }
    Ok(match split_form(&f, &g) {
        FormSplit::Product {
            scalar,
            left,
            right,
        } => {
            let out = ModPFactorization {
                prime,
                support,
                scalar,
                left,
                right,
            };
            if out.expand() != reduced {
                return Err(Error::Internal(format!(
                    "mod {prime} split of {q} does not multiply back"
                )));
            }
            Some(out)
        }
        FormSplit::Zero | FormSplit::NeedsSquareRoot { .. } | FormSplit::Irreducible => None,
    })
}

/// Image of a rational linear form mod p, `None` if a coefficient is not
/// p-integral.
pub fn reduce_linear_form(f: &Fp, l: &DiffPoly, support: &[VarIndex]) -> Option<Vec<u64>> {
    support
        .iter()
        .map(|&k| {
            let c = l.coefficient(&Term::var(k));
            if c.is_zero() {
                Some(0)
            } else {
                f.reduce(&c)
            }
        })
        .collect()
}
