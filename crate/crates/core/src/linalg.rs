//! Exact linear algebra: fraction-free rank and sparse span membership.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank of an integer matrix by Bareiss fraction-free elimination.
///
/// Every intermediate entry is a minor of the input, so each division below is
/// exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix: each row is scaled by the lcm of its
/// denominators, then [`bareiss_rank`] runs on the integer matrix.
pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let ints = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    bareiss_rank(ints)
}

/// Incremental echelon form of sparse vectors over the rationals.
///
/// Each stored pivot vector is keyed by its largest coordinate, and no two
/// pivots share a key. Alongside each pivot the combination of inserted input
/// vectors that produced it is tracked, so span membership comes with explicit
/// coefficients.
type SparseVector<K> = BTreeMap<K, BigRational>;
type Combination = BTreeMap<usize, BigRational>;

#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone> {
    pivots: BTreeMap<K, (SparseVector<K>, Combination)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon {
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }
}

fn axpy<K: Ord + Clone>(
    dst: &mut BTreeMap<K, BigRational>,
    a: &BigRational,
    src: &BTreeMap<K, BigRational>,
) {
    for (k, v) in src {
        let e = dst.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += a * v;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Top-reduces `v` against the pivots. Returns the remainder and the
    /// combination `c` of inserted vectors with `v - sum c_i * input_i = remainder`.
    fn reduce(&self, mut v: BTreeMap<K, BigRational>) -> (SparseVector<K>, Combination) {
        let mut combo = BTreeMap::new();
        while let Some((lead, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let Some((pv, pc)) = self.pivots.get(&lead) else {
                break;
            };
            let f = &c / &pv[&lead];
            axpy(&mut v, &-&f, pv);
            axpy(&mut combo, &f, pc);
        }
        (v, combo)
    }

    /// Adds the next input vector (numbered in insertion order). Returns `true`
    /// when it increased the rank.
    pub fn insert(&mut self, v: BTreeMap<K, BigRational>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(v);
        let Some(lead) = rem.keys().next_back().cloned() else {
            return false;
        };
        let mut track: BTreeMap<usize, BigRational> =
            combo.into_iter().map(|(k, c)| (k, -c)).collect();
        track.insert(id, BigRational::one());
        self.pivots.insert(lead, (rem, track));
        true
    }

    /// Coefficients expressing `target` in terms of the inserted vectors, or
    /// `None` when `target` is outside their span.
    pub fn express(
        &self,
        target: BTreeMap<K, BigRational>,
    ) -> Option<BTreeMap<usize, BigRational>> {
        let (rem, combo) = self.reduce(target);
        rem.is_empty().then_some(combo)
    }
}
