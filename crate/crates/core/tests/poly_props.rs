use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sigmapoly::{DiffPoly, Term};

fn term() -> impl Strategy<Value = Term> {
    prop::collection::vec((0usize..=64, 1u32..=2), 0..=3).prop_map(|f| {
        let t = Term::from_factors(f);
        if t.degree() > 4 {
            Term::var(t.min_index().unwrap())
        } else {
            t
        }
    })
}

fn coefficient() -> impl Strategy<Value = BigRational> {
    (-1000i64..=1000, 1i64..=1000)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn diff_poly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((term(), coefficient()), 0..=6).prop_map(DiffPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn renormalizing_is_identity(p in diff_poly()) {
        prop_assert_eq!(p.renormalized(), p.clone());
        prop_assert!(p.terms().all(|(_, c)| *c != BigRational::from_integer(0.into())));
    }

    #[test]
    fn round_trip(p in diff_poly()) {
        let text = p.to_string();
        let back: DiffPoly = text.parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn shift_is_ring_endomorphism(p in diff_poly(), q in diff_poly(), k in 0usize..=64) {
        prop_assert_eq!((&p * &q).shift(k).unwrap(), &p.shift(k).unwrap() * &q.shift(k).unwrap());
        prop_assert_eq!((&p + &q).shift(k).unwrap(), &p.shift(k).unwrap() + &q.shift(k).unwrap());
        prop_assert_eq!(p.shift(0).unwrap(), p.clone());
    }

    #[test]
    fn shifts_compose(p in diff_poly(), a in 0usize..=40, b in 0usize..=40) {
        prop_assert_eq!(p.shift(a).unwrap().shift(b).unwrap(), p.shift(a + b).unwrap());
    }

    #[test]
    fn shift_is_injective(p in diff_poly(), q in diff_poly(), k in 0usize..=64) {
        prop_assert_eq!(p.shift(k).unwrap() == q.shift(k).unwrap(), p == q);
    }

    #[test]
    fn shift_preserves_coefficients(p in diff_poly(), k in 0usize..=64) {
        let s = p.shift(k).unwrap();
        let a: Vec<_> = p.terms().map(|(_, c)| c.clone()).collect();
        let b: Vec<_> = s.terms().map(|(_, c)| c.clone()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn eord_is_shift_invariant(t in term(), k in 0usize..=64) {
        prop_assert_eq!(t.shift(k).unwrap().eord(), t.eord());
    }

    #[test]
    fn eord_is_index_spread(t in term()) {
        let idx: Vec<usize> = t.index_sequence().collect();
        let expected = match (idx.first(), idx.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        };
        prop_assert_eq!(t.eord(), expected);
    }

    #[test]
    fn degree_is_additive(s in term(), t in term()) {
        prop_assert_eq!(s.mul(&t).degree(), s.degree() + t.degree());
    }

    #[test]
    fn ring_axioms(p in diff_poly(), q in diff_poly(), r in diff_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &DiffPoly::one(), p.clone());
    }

    #[test]
    fn scale_matches_constant_multiplication(p in diff_poly(), c in coefficient()) {
        prop_assert_eq!(p.scale(&c), &p * &DiffPoly::constant(c.clone()));
    }

    #[test]
    fn format_lists_terms_in_graded_order(p in diff_poly()) {
        let terms: Vec<&Term> = p.terms().map(|(t, _)| t).collect();
        for w in terms.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ka = (a.degree(), a.index_sequence().collect::<Vec<_>>());
            let kb = (b.degree(), b.index_sequence().collect::<Vec<_>>());
            prop_assert!(ka < kb);
        }
    }
}

#[test]
fn spec_arithmetic_examples() {
    let p = |s: &str| s.parse::<DiffPoly>().unwrap();
    assert_eq!(p("y0*y1 + y2*y4").shift(1).unwrap(), p("y1*y2 + y3*y5"));
    assert!((&p("y0*y1") + &p("-1*y0*y1")).is_zero());
    assert_eq!(
        &p("y0 + y2") * &p("y1 + y4"),
        p("y0*y1 + y0*y4 + y1*y2 + y2*y4")
    );
    assert_eq!(
        p("2*y0^2").scale(&BigRational::new(1.into(), 2.into())),
        p("y0^2")
    );
    assert_eq!(p("3/2*y1^2 - y0").to_string(), "-y0 + 3/2*y1^2");
    assert_eq!(p("0"), DiffPoly::zero());
    assert_eq!(Term::product(&[0, 1]).degree(), 2);
    assert_eq!(Term::one().degree(), 0);
    assert_eq!(Term::from_factors([(0, 2), (3, 1)]).degree(), 3);
    assert_eq!(Term::product(&[2, 4]).eord(), 2);
    assert_eq!(Term::var(5).eord(), 0);
    assert_eq!(Term::from_factors([(0, 2), (3, 1)]).eord(), 3);
    assert_eq!(Term::one().eord(), 0);
}
