//! Shared test oracle: certified rational brackets for `u + v q`.
//!
//! `sqrt_interval` brackets `sqrt(d)` between rationals by damped Newton
//! iteration from above, to any requested number of decimal digits. Bracketing
//! the value of an element through the root form of `q` gives an independent
//! sign oracle that never touches the production comparison path: whenever the
//! bracket excludes zero, the sign is certain.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use schilling_core::FieldElement;

/// Rationals `(lo, hi)` with `lo < sqrt(d) < hi` and `hi - lo < 10^-digits`.
pub fn sqrt_interval(d: i64, digits: u32) -> (BigRational, BigRational) {
    assert!(d > 1);
    let d_rat = BigRational::from_integer(BigInt::from(d));
    let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
    let two = BigRational::from_integer(BigInt::from(2));
    // Any integer strictly above sqrt(d) works as a start; Newton stays above.
    let mut hi = BigRational::from_integer(BigInt::from((d as f64).sqrt() as i64 + 1));
    loop {
        let lo = &d_rat / &hi;
        if &hi - &lo < eps {
            return (lo, hi);
        }
        hi = (&hi + &d_rat / &hi) / &two;
    }
}

/// Bracket the real value of `e` to roughly `digits` decimal digits.
pub fn value_interval(e: &FieldElement, digits: u32) -> (BigRational, BigRational) {
    let rf = e.case().root_form();
    let (s_lo, s_hi) = sqrt_interval(rf.d, digits);
    let a = BigRational::from_integer(BigInt::from(rf.a));
    let b = BigRational::from_integer(BigInt::from(rf.b));
    let c = BigRational::from_integer(BigInt::from(rf.c));
    // q = (a + b sqrt(d)) / c, with c > 0 in the catalog.
    let (q_lo, q_hi) = if b.is_negative() {
        ((&a + &b * &s_hi) / &c, (&a + &b * &s_lo) / &c)
    } else {
        ((&a + &b * &s_lo) / &c, (&a + &b * &s_hi) / &c)
    };
    let (t_lo, t_hi) = if e.v().is_negative() {
        (e.v() * &q_hi, e.v() * &q_lo)
    } else {
        (e.v() * &q_lo, e.v() * &q_hi)
    };
    (e.u() + t_lo, e.u() + t_hi)
}

/// Sign of `e` by interval evaluation, or `None` when the bracket straddles
/// zero (value indistinguishable from zero at this precision).
pub fn interval_sign(e: &FieldElement, digits: u32) -> Option<i32> {
    let (lo, hi) = value_interval(e, digits);
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else {
        None
    }
}
