//! The witness family and exhaustive scans of its effective-order combinatorics.
//!
//! `u(n) = y_{n+2^n-1} * y_{n+2^(n+1)-1}` has effective order `2^n`, and
//! `A(n) = u(2n-2) + u(2n-1)`. Differences and sums of distinct powers of two
//! never coincide, which keeps the shifts of all `A(i)` on pairwise disjoint
//! monomials. The scans below check those facts over explicit finite ranges.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::poly::{DiffPoly, Term, VarIndex};

/// Upper bound on the number of violations stored in a [`ScanReport`]; the
/// total is still counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 1024;

/// Largest exponent accepted by [`remark32_scan`]; powers of two up to
/// `2^MAX_SCAN_EXPONENT` must fit comfortably in `i128`.
pub const MAX_SCAN_EXPONENT: u32 = 120;

fn pow2(n: u32) -> Result<usize> {
    1usize
        .checked_shl(n)
        .filter(|_| n < usize::BITS)
        .ok_or_else(|| Error::IndexOverflow(format!("2^{n} does not fit a variable index")))
}

/// The two variable indices of `u(n)`.
pub fn u_indices(n: u32) -> Result<(VarIndex, VarIndex)> {
    let overflow = || Error::IndexOverflow(format!("indices of u({n}) do not fit"));
    let n_us = n as usize;
    let lo = (n_us + pow2(n)?).checked_sub(1).ok_or_else(overflow)?;
    let hi = n_us
        .checked_add(pow2(n + 1)?)
        .and_then(|x| x.checked_sub(1))
        .ok_or_else(overflow)?;
    Ok((lo, hi))
}

/// `u(n)` as a single term.
pub fn u_term(n: u32) -> Result<Term> {
    let (lo, hi) = u_indices(n)?;
    let t = Term::product(&[lo, hi]);
    let expected = pow2(n)?;
    if t.eord() != expected {
        return Err(Error::Internal(format!(
            "u({n}) = {t} has effective order {} instead of {expected}",
            t.eord()
        )));
    }
    Ok(t)
}

/// `u(n) = y_{n+2^n-1} * y_{n+2^(n+1)-1}` with coefficient 1.
pub fn make_u(n: u32) -> Result<DiffPoly> {
    Ok(u_term(n)?.into())
}

/// The indices of `A(n)` computed from the closed form
/// `y_{2n-3+2^(2n-2)} y_{2n-3+2^(2n-1)} + y_{2n-2+2^(2n-1)} y_{2n-2+2^(2n)}`.
fn closed_form_a_indices(n: u32) -> Result<[(VarIndex, VarIndex); 2]> {
    let overflow = || Error::IndexOverflow(format!("indices of A({n}) do not fit"));
    let n = i128::from(n);
    let p = |e: i128| -> Result<i128> {
        u32::try_from(e)
            .ok()
            .filter(|&e| e < 126)
            .map(|e| 1i128 << e)
            .ok_or_else(overflow)
    };
    let idx = |v: i128| VarIndex::try_from(v).map_err(|_| overflow());
    Ok([
        (
            idx(2 * n - 3 + p(2 * n - 2)?)?,
            idx(2 * n - 3 + p(2 * n - 1)?)?,
        ),
        (idx(2 * n - 2 + p(2 * n - 1)?)?, idx(2 * n - 2 + p(2 * n)?)?),
    ])
}

/// `A(n) = u(2n-2) + u(2n-1)` for `n >= 1`, cross-checked against the closed
/// form.
pub fn make_a(n: u32) -> Result<DiffPoly> {
    if n == 0 {
        return Err(Error::Contract("A(n) is indexed from n = 1".into()));
    }
    let k = n
        .checked_mul(2)
        .ok_or_else(|| Error::IndexOverflow(format!("A({n})")))?;
    let a = &make_u(k - 2)? + &make_u(k - 1)?;
    let [(a0, a1), (b0, b1)] = closed_form_a_indices(n)?;
    let closed =
        &DiffPoly::from(Term::product(&[a0, a1])) + &DiffPoly::from(Term::product(&[b0, b1]));
    if a != closed {
        return Err(Error::Internal(format!(
            "A({n}): u-form {a} disagrees with closed form {closed}"
        )));
    }
    Ok(a)
}

/// One counterexample found by a scan. Ordering is lexicographic on the tuple
/// first, which is the order reports list them in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub tuple: Vec<u64>,
    pub rule: String,
    pub detail: String,
}

impl Violation {
    pub fn new(rule: impl Into<String>, tuple: Vec<u64>, detail: impl Into<String>) -> Self {
        Violation {
            tuple,
            rule: rule.into(),
            detail: detail.into(),
        }
    }
}

/// Evidence produced by an exhaustive scan over an explicit range.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub scan: String,
    pub parameters: serde_json::Value,
    /// Number of individual cases examined.
    pub checked: u64,
    pub violation_count: u64,
    /// Sorted, capped at [`MAX_RECORDED_VIOLATIONS`].
    pub violations: Vec<Violation>,
    /// Scan-specific measured values.
    pub summary: serde_json::Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn new(scan: &str, parameters: serde_json::Value) -> Self {
        ScanReport {
            scan: scan.into(),
            parameters,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            summary: serde_json::Value::Null,
            elapsed: Duration::ZERO,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }

    pub(crate) fn absorb(&mut self, mut found: Vec<Violation>) {
        self.violation_count += found.len() as u64;
        self.violations.append(&mut found);
        self.violations.sort();
        self.violations.truncate(MAX_RECORDED_VIOLATIONS);
    }
}

/// Which power-of-two coincidences a 4-tuple exhibits.
fn remark32_rules(a: i128, b: i128, c: i128, d: i128) -> impl Iterator<Item = &'static str> {
    [
        (b - a == d - c, "2^b - 2^a = 2^d - 2^c"),
        (b - a == d + c, "2^b - 2^a = 2^d + 2^c"),
        (a + b == d + c, "2^a + 2^b = 2^d + 2^c"),
    ]
    .into_iter()
    .filter_map(|(hit, rule)| hit.then_some(rule))
}

/// Scans all 4-tuples `(a, b, c, d)` in `[0, max_exp]` for the power-of-two
/// coincidences `2^b - 2^a = 2^d - 2^c`, `2^b - 2^a = 2^d + 2^c` and
/// `2^a + 2^b = 2^d + 2^c`. With `require_distinct` only tuples of pairwise
/// distinct integers are considered; without it the scan is a diagnostic that
/// must report the trivial coincidences.
pub fn remark32_scan_with(max_exp: u32, require_distinct: bool) -> Result<ScanReport> {
    if max_exp < 3 {
        return Err(Error::Contract(format!(
            "remark32 scan needs max >= 3, got {max_exp}"
        )));
    }
    if max_exp > MAX_SCAN_EXPONENT {
        return Err(Error::Contract(format!(
            "remark32 scan supports max <= {MAX_SCAN_EXPONENT}, got {max_exp}"
        )));
    }
    let start = Instant::now();
    let mut report = ScanReport::new(
        "remark32",
        json!({ "max": max_exp, "require_distinct": require_distinct }),
    );
    let pw = |e: u32| 1i128 << e;
    let per_a: Vec<(u64, u64, Vec<Violation>)> = (0..=max_exp)
        .into_par_iter()
        .map(|a| {
            let (mut checked, mut hits) = (0u64, 0u64);
            let mut found = Vec::new();
            for b in 0..=max_exp {
                for c in 0..=max_exp {
                    for d in 0..=max_exp {
                        if require_distinct
                            && (a == b || a == c || a == d || b == c || b == d || c == d)
                        {
                            continue;
                        }
                        checked += 1;
                        for rule in remark32_rules(pw(a), pw(b), pw(c), pw(d)) {
                            hits += 1;
                            if found.len() < MAX_RECORDED_VIOLATIONS {
                                found.push(Violation::new(
                                    rule,
                                    vec![a.into(), b.into(), c.into(), d.into()],
                                    format!("a={a} b={b} c={c} d={d}"),
                                ));
                            }
                        }
                    }
                }
            }
            (checked, hits, found)
        })
        .collect();
    let mut all = Vec::new();
    for (checked, hits, found) in per_a {
        report.checked += checked;
        report.violation_count += hits;
        all.extend(found);
    }
    all.sort();
    all.truncate(MAX_RECORDED_VIOLATIONS);
    report.violations = all;
    report.summary = json!({ "tuples_checked": report.checked });
    report.elapsed = start.elapsed();
    Ok(report)
}

/// [`remark32_scan_with`] over distinct tuples.
pub fn remark32_scan(max_exp: u32) -> Result<ScanReport> {
    remark32_scan_with(max_exp, true)
}

/// Measures the effective orders of `u(0), ..., u(n_max)` from the constructed
/// terms and checks that they equal `2^n`, are pairwise distinct, and satisfy
/// the three sum/difference non-coincidences on distinct 4-tuples.
pub fn eord_distinctness_scan(n_max: u32) -> Result<ScanReport> {
    if n_max < 1 {
        return Err(Error::Contract("eord scan needs n_max >= 1".into()));
    }
    let start = Instant::now();
    let mut report = ScanReport::new("eords", json!({ "n_max": n_max }));
    let eords: Vec<u64> = (0..=n_max)
        .map(|n| Ok(u_term(n)?.eord() as u64))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    for (n, &e) in eords.iter().enumerate() {
        report.checked += 1;
        if u128::from(e) != 1u128 << n {
            found.push(Violation::new(
                "Eord(u(n)) = 2^n",
                vec![n as u64],
                format!("measured {e}"),
            ));
        }
    }
    let len = eords.len();
    for i in 0..len {
        for j in i + 1..len {
            report.checked += 1;
            if eords[i] == eords[j] {
                found.push(Violation::new(
                    "distinct effective orders",
                    vec![i as u64, j as u64],
                    format!("both equal {}", eords[i]),
                ));
            }
        }
    }
    let per_i: Vec<(u64, Vec<Violation>)> = (0..len)
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            let mut out = Vec::new();
            let e = |k: usize| i128::from(eords[k]);
            for j in 0..len {
                for k in 0..len {
                    for l in 0..len {
                        if i == j || i == k || i == l || j == k || j == l || k == l {
                            continue;
                        }
                        checked += 1;
                        let tuple = || vec![i as u64, j as u64, k as u64, l as u64];
                        let (ei, ej, ek, el) = (e(i), e(j), e(k), e(l));
                        if ei - ej == ek - el {
                            out.push(Violation::new("E_i - E_j = E_k - E_l", tuple(), ""));
                        }
                        if ei + ej == ek + el {
                            out.push(Violation::new("E_i + E_j = E_k + E_l", tuple(), ""));
                        }
                        if ei - ej == ek + el {
                            out.push(Violation::new("E_i - E_j = E_k + E_l", tuple(), ""));
                        }
                    }
                }
            }
            (checked, out)
        })
        .collect();
    for (checked, v) in per_i {
        report.checked += checked;
        found.extend(v);
    }
    report.absorb(found);
    report.summary = json!({ "measured_eords": eords });
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Reports every pair of labels that map to the same term. Returns the number
/// of terms examined and the collisions.
pub fn find_term_collisions(
    labelled: impl IntoIterator<Item = ((u64, u64), Term)>,
) -> (u64, Vec<Violation>) {
    let mut seen: HashMap<Term, (u64, u64)> = HashMap::new();
    let mut count = 0;
    let mut found = Vec::new();
    for (label, t) in labelled {
        count += 1;
        if let Some(&prev) = seen.get(&t) {
            found.push(Violation::new(
                "shifted witness terms collide",
                vec![prev.0, prev.1, label.0, label.1],
                format!("both give {t}"),
            ));
        } else {
            seen.insert(t, label);
        }
    }
    (count, found)
}

/// Checks that `(k, j) -> sigma^j(u(k))` is injective for `k <= k_max`,
/// `j <= j_max`.
pub fn monomial_injectivity_scan(k_max: u32, j_max: usize) -> Result<ScanReport> {
    let start = Instant::now();
    let mut report = ScanReport::new("injectivity", json!({ "k_max": k_max, "j_max": j_max }));
    let mut labelled = Vec::new();
    for k in 0..=k_max {
        let u = u_term(k)?;
        for j in 0..=j_max {
            labelled.push(((u64::from(k), j as u64), u.shift(j)?));
        }
    }
    let (count, found) = find_term_collisions(labelled);
    report.checked = count;
    report.absorb(found);
    report.summary = json!({ "terms": count });
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    #[test]
    fn u_examples() {
        assert_eq!(make_u(0).unwrap(), p("y0*y1"));
        assert_eq!(make_u(1).unwrap(), p("y2*y4"));
        assert_eq!(make_u(2).unwrap(), p("y5*y9"));
        assert_eq!(make_u(3).unwrap(), p("y10*y18"));
    }

    #[test]
    fn a_examples() {
        assert_eq!(make_a(1).unwrap().to_string(), "y0*y1 + y2*y4");
        assert_eq!(make_a(2).unwrap().to_string(), "y5*y9 + y10*y18");
        assert_eq!(make_a(3).unwrap().to_string(), "y19*y35 + y36*y68");
        assert!(matches!(make_a(0), Err(Error::Contract(_))));
    }

    #[test]
    fn overflow_is_checked() {
        let bits = usize::BITS;
        assert!(matches!(make_u(bits), Err(Error::IndexOverflow(_))));
        assert!(matches!(make_u(bits - 1), Err(Error::IndexOverflow(_))));
        assert!(make_u(bits - 3).is_ok());
        assert!(matches!(make_a(bits / 2), Err(Error::IndexOverflow(_))));
    }

    #[test]
    fn remark32_small_ranges() {
        let r = remark32_scan(3).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.checked, 24);
        assert!(matches!(remark32_scan(2), Err(Error::Contract(_))));
    }

    #[test]
    fn remark32_diagnostic_mode_finds_trivial_coincidences() {
        let r = remark32_scan_with(3, false).unwrap();
        assert!(!r.is_clean());
        assert_eq!(r.checked, 4u64.pow(4));
        assert!(r
            .violations
            .iter()
            .any(|v| v.tuple[0] == v.tuple[2] && v.tuple[1] == v.tuple[3]));
        // (0,0,0,0) is the lexicographically first tuple
        assert_eq!(r.violations[0].tuple, vec![0, 0, 0, 0]);
    }

    #[test]
    fn eord_scan_small() {
        let r = eord_distinctness_scan(1).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.summary["measured_eords"], json!([1, 2]));
        let r = eord_distinctness_scan(12).unwrap();
        assert!(r.is_clean());
        let expected: Vec<u64> = (0..=12).map(|n| 1 << n).collect();
        assert_eq!(r.summary["measured_eords"], json!(expected));
    }

    #[test]
    fn injectivity_trivial_and_diagnostic() {
        let r = monomial_injectivity_scan(0, 0).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.checked, 1);
        let t = Term::product(&[0, 2]);
        let (_, found) = find_term_collisions([((0, 0), t.clone()), ((1, 0), t.shift(0).unwrap())]);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].tuple, vec![0, 0, 1, 0]);
    }
}
