//! Randomized algebra checks for the four quadratic fields.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use schilling_core::{FieldCase, FieldElement};

fn rational() -> impl Strategy<Value = BigRational> {
    (-200i64..=200, 1i64..=40)
        .prop_map(|(num, den)| BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn any_case() -> impl Strategy<Value = FieldCase> {
    prop::sample::select(FieldCase::ALL.to_vec())
}

fn element(case: FieldCase) -> impl Strategy<Value = FieldElement> {
    (rational(), rational()).prop_map(move |(u, v)| FieldElement::new(case, u, v))
}

fn case_and_elements() -> impl Strategy<Value = (FieldCase, FieldElement, FieldElement, FieldElement)>
{
    any_case().prop_flat_map(|case| {
        (
            Just(case),
            element(case),
            element(case),
            element(case),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn ring_axioms((case, x, y, z) in case_and_elements()) {
        let _ = case;
        prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn inverse_is_two_sided((case, x, _y, _z) in case_and_elements()) {
        let _ = case;
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert!((&inv * &x).is_one());
    }

    #[test]
    fn coordinates_stay_canonical((case, x, y, _z) in case_and_elements()) {
        let _ = case;
        let p = &x * &y;
        for r in [p.u(), p.v()] {
            prop_assert!(r.denom().is_positive());
            // Re-normalizing a reduced fraction must be the identity.
            prop_assert_eq!(&BigRational::new(r.numer().clone(), r.denom().clone()), r);
        }
    }

    #[test]
    fn sign_matches_interval_oracle((case, x, _y, _z) in case_and_elements()) {
        let _ = case;
        // 60-digit bracket; decisive whenever |value| > 1e-20.
        match common::interval_sign(&x, 60) {
            Some(s) => prop_assert_eq!(x.signum(), s),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn sign_is_odd_under_negation((case, x, _y, _z) in case_and_elements()) {
        let _ = case;
        prop_assert_eq!(x.signum(), -(-&x).signum());
        prop_assert_eq!(x.abs(), (-&x).abs());
        prop_assert!(x.abs().signum() >= 0);
    }

    #[test]
    fn render_parse_roundtrip((case, x, _y, _z) in case_and_elements()) {
        let rendered = x.render();
        prop_assert_eq!(FieldElement::parse(case, &rendered).unwrap(), x);
    }
}
