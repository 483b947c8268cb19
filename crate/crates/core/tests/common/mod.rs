//! Oracles and generators shared by the integration tests and the acceptance
//! runner. Nothing here calls the slice, Gram or membership code under test.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use sigmapoly::{DiffPoly, Term};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn poly(s: &str) -> DiffPoly {
    s.parse().expect("test polynomial parses")
}

/// Index pairs of the two terms of `A(n)`, from the closed form
/// `y_{2n-3+2^(2n-2)} y_{2n-3+2^(2n-1)} + y_{2n-2+2^(2n-1)} y_{2n-2+2^(2n)}`.
pub fn closed_form_a(n: u32) -> [(u64, u64); 2] {
    assert!(n >= 1);
    let n = i128::from(n);
    let p = |e: i128| 1i128 << e;
    let f = |x: i128| u64::try_from(x).unwrap();
    [
        (f(2 * n - 3 + p(2 * n - 2)), f(2 * n - 3 + p(2 * n - 1))),
        (f(2 * n - 2 + p(2 * n - 1)), f(2 * n - 2 + p(2 * n))),
    ]
}

/// Index pair of `u(n) = y_{n+2^n-1} y_{n+2^(n+1)-1}`.
pub fn closed_form_u(n: u32) -> (u64, u64) {
    let n = u64::from(n);
    (n + (1 << n) - 1, n + (1 << (n + 1)) - 1)
}

pub fn pair_term(a: u64, b: u64) -> Term {
    Term::product(&[a as usize, b as usize])
}

/// `sigma^j(A(i))` built from the closed form.
pub fn basis_monomials(i: u32, j: u64) -> [Term; 2] {
    let [(a, b), (c, d)] = closed_form_a(i);
    [pair_term(a + j, b + j), pair_term(c + j, d + j)]
}

/// Solves `sum_c x_c * columns[c] = rhs` exactly by Gauss-Jordan elimination on
/// a dense matrix. Returns the solution and whether it is unique.
pub fn dense_solve(
    columns: &[BTreeMap<Term, Q>],
    rhs: &BTreeMap<Term, Q>,
) -> Option<(Vec<Q>, bool)> {
    let rows: Vec<Term> = columns
        .iter()
        .flat_map(|c| c.keys())
        .chain(rhs.keys())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = columns.len();
    let mut a: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Q> = columns
                .iter()
                .map(|c| c.get(r).cloned().unwrap_or_else(Q::zero))
                .collect();
            row.push(rhs.get(r).cloned().unwrap_or_else(Q::zero));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x = &*x - y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n].clone();
    }
    Some((x, pivots.len() == n))
}

/// Independent slice oracle: solves the linear system over the shifted
/// witness basis `sigma^j(A(i))`, `i <= m`, restricted to the connected
/// component of the query's monomials. Returns the nonzero coefficients when
/// the query is a member, and asserts the solution is unique.
pub fn slice_oracle(query: &DiffPoly, m: u32) -> Option<BTreeMap<(u32, usize), Q>> {
    let top = query.max_index().unwrap() as u64;
    let mut by_monomial: HashMap<Term, Vec<(u32, u64)>> = HashMap::new();
    for i in 1..=m {
        for j in 0..=top {
            for t in basis_monomials(i, j) {
                by_monomial.entry(t).or_default().push((i, j));
            }
        }
    }
    let mut rows: BTreeSet<Term> = query.terms().map(|(t, _)| t.clone()).collect();
    let mut cols: BTreeSet<(u32, u64)> = BTreeSet::new();
    loop {
        let before = (rows.len(), cols.len());
        for r in rows.clone() {
            for &c in by_monomial.get(&r).map(Vec::as_slice).unwrap_or(&[]) {
                if cols.insert(c) {
                    rows.extend(basis_monomials(c.0, c.1));
                }
            }
        }
        if (rows.len(), cols.len()) == before {
            break;
        }
    }
    let cols: Vec<(u32, u64)> = cols.into_iter().collect();
    let columns: Vec<BTreeMap<Term, Q>> = cols
        .iter()
        .map(|&(i, j)| {
            basis_monomials(i, j)
                .into_iter()
                .map(|t| (t, Q::one()))
                .collect()
        })
        .collect();
    let rhs: BTreeMap<Term, Q> = query.terms().map(|(t, c)| (t.clone(), c.clone())).collect();
    let (x, unique) = dense_solve(&columns, &rhs)?;
    assert!(unique, "slice basis columns are dependent for {query}");
    Some(
        cols.iter()
            .zip(x)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(i, j), v)| ((i, j as usize), v))
            .collect(),
    )
}

pub fn random_coefficient(rng: &mut impl Rng) -> Q {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return q(n, rng.gen_range(1..=9));
        }
    }
}

fn basis_combination(rng: &mut impl Rng, families: u32, max_shift: u64) -> DiffPoly {
    let count = rng.gen_range(1..=4);
    let mut out = DiffPoly::zero();
    for _ in 0..count {
        let i = rng.gen_range(1..=families);
        let j = rng.gen_range(0..=max_shift);
        let c = random_coefficient(rng);
        for t in basis_monomials(i, j) {
            out = &out + &DiffPoly::monomial(t, c.clone());
        }
    }
    out
}

/// A slice query for `[A(1..m)]` with shifts at most `max_shift`. Mixes exact
/// members with several kinds of near-misses.
pub fn random_slice_query(rng: &mut impl Rng, m: u32, max_shift: u64) -> DiffPoly {
    loop {
        let base = basis_combination(rng, m, max_shift);
        let p = match rng.gen_range(0..6) {
            0 => base,
            1 => {
                // rescale one coefficient
                let terms: Vec<_> = base.terms().map(|(t, _)| t.clone()).collect();
                let t = terms.choose(rng).unwrap().clone();
                &base + &DiffPoly::monomial(t, random_coefficient(rng))
            }
            2 => {
                let a = rng.gen_range(0..=80u64);
                let b = rng.gen_range(a + 1..=a + 40);
                &base + &DiffPoly::monomial(pair_term(a, b), random_coefficient(rng))
            }
            3 => &base + &basis_combination(rng, m + 1, max_shift),
            4 => {
                let terms: Vec<_> = base.terms().map(|(t, c)| (t.clone(), c.clone())).collect();
                let drop = rng.gen_range(0..terms.len());
                DiffPoly::from_terms(
                    terms
                        .into_iter()
                        .enumerate()
                        .filter(|(k, _)| *k != drop)
                        .map(|(_, tc)| tc),
                )
            }
            _ => {
                // random monomials from the basis support
                let mut out = DiffPoly::zero();
                for _ in 0..rng.gen_range(1..=4) {
                    let i = rng.gen_range(1..=m);
                    let j = rng.gen_range(0..=max_shift);
                    let t = basis_monomials(i, j)[rng.gen_range(0..2)].clone();
                    let c = if rng.gen_bool(0.5) {
                        Q::one()
                    } else {
                        random_coefficient(rng)
                    };
                    out = &out + &DiffPoly::monomial(t, c);
                }
                out
            }
        };
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_linear_form(rng: &mut impl Rng, vars: &[usize]) -> DiffPoly {
    loop {
        let mut out = DiffPoly::zero();
        for &v in vars {
            if rng.gen_bool(0.7) {
                let n: i64 = rng.gen_range(-4..=4);
                let d = *[1i64, 2, 7].choose(rng).unwrap();
                out = &out + &DiffPoly::monomial(Term::var(v), q(n, d));
            }
        }
        if !out.is_zero() {
            return out;
        }
    }
}

/// A random nonzero homogeneous quadratic in at most 5 variables whose
/// coefficient denominators avoid 3 and 5. About a third are products of two
/// linear forms and a sixth are `x^2 - d y^2`, so every verdict occurs.
pub fn random_rational_quadratic(rng: &mut impl Rng) -> DiffPoly {
    loop {
        let mut pool: Vec<usize> = (0..10).collect();
        pool.shuffle(rng);
        let vars = &pool[..rng.gen_range(1..=5)];
        let p = match rng.gen_range(0..6) {
            0 | 1 => &random_linear_form(rng, vars) * &random_linear_form(rng, vars),
            2 if vars.len() >= 2 => {
                let d: i64 = rng.gen_range(-6..=6);
                &DiffPoly::monomial(Term::pow(vars[0], 2), Q::one())
                    - &DiffPoly::monomial(Term::pow(vars[1], 2), q(d, 1))
            }
            _ => {
                let mut out = DiffPoly::zero();
                for (a, &x) in vars.iter().enumerate() {
                    for &y in &vars[a..] {
                        if rng.gen_bool(0.5) {
                            let n: i64 = rng.gen_range(-9..=9);
                            let d = *[1i64, 2, 4, 7, 8].choose(rng).unwrap();
                            out = &out + &DiffPoly::monomial(Term::product(&[x, y]), q(n, d));
                        }
                    }
                }
                out
            }
        };
        if !p.is_zero() {
            return p;
        }
    }
}

fn modp(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() {
        r + BigInt::from(p)
    } else {
        r
    };
    u64::try_from(r).unwrap()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).expect("invertible")
}

/// Image of a p-integral rational.
pub fn reduce_q(x: &Q, p: u64) -> u64 {
    let d = modp(x.denom(), p);
    assert_ne!(d, 0, "{x} is not {p}-integral");
    modp(x.numer(), p) * inv_mod(d, p) % p
}

/// Coefficients of `f` mod p, zeros dropped.
pub fn reduce_poly(f: &DiffPoly, p: u64) -> BTreeMap<Term, u64> {
    f.terms()
        .map(|(t, c)| (t.clone(), reduce_q(c, p)))
        .filter(|(_, v)| *v != 0)
        .collect()
}

/// Scales a rational linear form to a primitive integral one, returning
/// `(content, primitive)` with `f = content * primitive`.
fn primitive(f: &DiffPoly) -> (Q, DiffPoly) {
    use num_integer::Integer;
    let den = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let num = f.terms().fold(BigInt::zero(), |acc, (_, c)| {
        acc.gcd(&(c * Q::from(den.clone())).to_integer())
    });
    let content = Q::new(num, den);
    (content.clone(), f.scale(&content.recip()))
}

/// Reduces a rational factorization `q = s * l * r` mod p via Gauss's lemma:
/// with `l`, `r` primitive, the remaining scalar is p-integral whenever `q` is.
/// Returns the expansion of the reduced product.
pub fn reduce_factorization(s: &Q, l: &DiffPoly, r: &DiffPoly, p: u64) -> BTreeMap<Term, u64> {
    let (cl, pl) = primitive(l);
    let (cr, pr) = primitive(r);
    let scalar = s * cl * cr;
    let product = (&pl * &pr).scale(&scalar);
    reduce_poly(&product, p)
}

/// Whether every term has degree at least 2, the characterization of the
/// example ideal generated by `y0 * y_k`.
pub fn all_terms_degree_at_least_two(p: &DiffPoly) -> bool {
    p.terms().all(|(t, _)| t.degree() >= 2)
}

/// A nonzero polynomial with terms of degree 2 or 3 in `y0..=y_max`.
pub fn random_high_degree_poly(rng: &mut impl Rng, max_index: usize) -> DiffPoly {
    loop {
        let mut out = DiffPoly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let d = rng.gen_range(2..=3);
            let idx: Vec<usize> = (0..d).map(|_| rng.gen_range(0..=max_index)).collect();
            out = &out + &DiffPoly::monomial(Term::product(&idx), random_coefficient(rng));
        }
        if !out.is_zero() {
            return out;
        }
    }
}

/// `random_high_degree_poly` plus a term of degree 0 or 1.
pub fn random_low_degree_poly(rng: &mut impl Rng, max_index: usize) -> DiffPoly {
    let base = random_high_degree_poly(rng, max_index);
    let t = if rng.gen_bool(0.3) {
        Term::one()
    } else {
        Term::var(rng.gen_range(0..=max_index))
    };
    &base + &DiffPoly::monomial(t, random_coefficient(rng))
}
