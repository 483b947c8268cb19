mod common;

use common::{closed_form_a, closed_form_u, pair_term};
use sigmapoly::witness::*;
use sigmapoly::{DiffPoly, Error};

#[test]
fn u_and_a_match_closed_forms() {
    for n in 0..=16 {
        let (a, b) = closed_form_u(n);
        assert_eq!(
            make_u(n).unwrap(),
            DiffPoly::from(pair_term(a, b)),
            "u({n})"
        );
        assert_eq!(make_u(n).unwrap().max_eord(), Some(1usize << n));
    }
    for n in 1..=8 {
        let [(a, b), (c, d)] = closed_form_a(n);
        let expected = &DiffPoly::from(pair_term(a, b)) + &DiffPoly::from(pair_term(c, d));
        let a_n = make_a(n).unwrap();
        assert_eq!(a_n, expected, "A({n})");
        assert_eq!(
            a_n,
            &make_u(2 * n - 2).unwrap() + &make_u(2 * n - 1).unwrap()
        );
        let eords: Vec<usize> = a_n.terms().map(|(t, _)| t.eord()).collect();
        assert_eq!(eords, vec![1 << (2 * n - 2), 1 << (2 * n - 1)]);
    }
    assert_eq!(make_a(3).unwrap().to_string(), "y19*y35 + y36*y68");
}

#[test]
fn overflow_is_checked() {
    assert!(matches!(make_u(64), Err(Error::IndexOverflow(_))));
    assert!(matches!(make_a(40), Err(Error::IndexOverflow(_))));
    assert!(matches!(make_a(0), Err(Error::Contract(_))));
}

#[test]
fn remark32_ranges() {
    let r = remark32_scan(3).unwrap();
    assert!(r.is_clean());
    assert_eq!(r.checked, 24);
    let r = remark32_scan(20).unwrap();
    assert!(r.is_clean());
    assert_eq!(r.checked, 21 * 20 * 19 * 18);
    assert!(remark32_scan(2).is_err());
}

#[test]
fn remark32_diagnostic_mode_reports() {
    let r = remark32_scan_with(5, false).unwrap();
    assert!(!r.is_clean());
    // a = c, b = d is always a coincidence
    assert!(r
        .violations
        .iter()
        .any(|v| v.tuple[0] == v.tuple[2] && v.tuple[1] == v.tuple[3] && v.tuple[0] != v.tuple[1]));
    let mut sorted = r.violations.clone();
    sorted.sort();
    assert_eq!(sorted, r.violations);
}

#[test]
fn eord_scans() {
    let r = eord_distinctness_scan(12).unwrap();
    assert!(r.is_clean());
    let measured: Vec<u64> = serde_json::from_value(r.summary["measured_eords"].clone()).unwrap();
    assert_eq!(measured, (0..=12).map(|n| 1u64 << n).collect::<Vec<_>>());
    let r = eord_distinctness_scan(1).unwrap();
    assert!(r.is_clean());
    assert_eq!(r.summary["measured_eords"], serde_json::json!([1, 2]));
    assert!(eord_distinctness_scan(20).unwrap().is_clean());
}

#[test]
fn injectivity_scans() {
    let r = monomial_injectivity_scan(12, 64).unwrap();
    assert!(r.is_clean());
    assert_eq!(r.checked, 13 * 65);
    assert!(monomial_injectivity_scan(0, 0).unwrap().is_clean());
}

#[test]
fn collision_finder_detects_fabricated_pair() {
    let t = pair_term(0, 2);
    let (count, v) = find_term_collisions(vec![((0, 0), t.clone()), ((1, 0), t)]);
    assert_eq!(count, 2);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].tuple, vec![0, 0, 1, 0]);
}

#[test]
fn scans_are_deterministic() {
    let a = serde_json::to_string(&remark32_scan_with(6, false).unwrap()).unwrap();
    let b = serde_json::to_string(&remark32_scan_with(6, false).unwrap()).unwrap();
    assert_eq!(a, b);
}
