use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use vertex_core::qnum::matrix::{det, det_cofactor};
use vertex_core::qnum::{bracket, eval_numeric, half_lattice_check, LaurentPoly, QRat};

fn laurent(step: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -9i64..=9), 1..4).prop_map(move |ts| {
        LaurentPoly::from_terms(
            ts.into_iter()
                .map(|(e, c)| (e * step, BigRational::from_integer(BigInt::from(c)))),
        )
    })
}

fn qrat_on(step: i64) -> impl Strategy<Value = QRat> {
    (laurent(step), laurent(step))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| QRat::new(n, d).unwrap())
}

fn qrat() -> impl Strategy<Value = QRat> {
    prop_oneof![qrat_on(8), qrat_on(24)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in qrat(), b in qrat(), c in qrat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_unique(n in laurent(24), d in laurent(24), k in laurent(8)) {
        prop_assume!(!d.is_zero() && !k.is_zero());
        let x = QRat::new(n.clone(), d.clone()).unwrap();
        let y = QRat::new(n.mul(&k), d.mul(&k)).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(serde_json::to_string(&x).unwrap(), serde_json::to_string(&y).unwrap());
        // monic, ordinary denominator with nonzero constant term
        prop_assert_eq!(x.den().min_exp(), Some(0));
        prop_assert!(x.den().leading_coeff().unwrap() == &BigRational::from_integer(1.into()));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in qrat_on(24), b in qrat_on(24)) {
        let u0 = BigRational::new(2.into(), 3.into());
        if let (Ok(x), Ok(y)) = (eval_numeric(&a, &u0), eval_numeric(&b, &u0)) {
            prop_assert_eq!(eval_numeric(&(&a * &b), &u0).unwrap(), &x * &y);
            prop_assert_eq!(eval_numeric(&(&a + &b), &u0).unwrap(), &x + &y);
        }
    }

    #[test]
    fn json_round_trip(a in qrat()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: QRat = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn half_lattice_closed_under_field_ops(a in qrat_on(24), b in qrat_on(24)) {
        prop_assert!(half_lattice_check(&(&a * &b)));
        prop_assert!(half_lattice_check(&(&a - &b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_det_matches_cofactor(entries in prop::collection::vec(qrat_on(24), 16)) {
        let m: Vec<Vec<QRat>> = entries.chunks(4).map(|r| r.to_vec()).collect();
        prop_assert_eq!(det(&m), det_cofactor(&m));
    }
}

#[test]
fn bracket_recursion() {
    // [n+1] = (q^{1/2} + q^{-1/2})[n] - [n-1]
    let s = QRat::q48(24) + QRat::q48(-24);
    for n in 1..12u32 {
        assert_eq!(bracket(n + 1), &s * &bracket(n) - bracket(n - 1));
    }
}

#[test]
fn malformed_json_is_rejected() {
    for bad in [
        r#"{"num":[[1,"1"]],"den":[]}"#,
        r#"{"num":[[0,"x"]],"den":[[0,"1"]]}"#,
        r#"{"num":[]}"#,
    ] {
        assert!(serde_json::from_str::<QRat>(bad).is_err(), "{bad}");
    }
}
