//! The four quadratic fields `Q(q)` and exact arithmetic on `u + v q`.
//!
//! Each supported `q` is a root of an integer quadratic `a q^2 + b q + c = 0`
//! and lies strictly in `(0, 1)`. An element is stored as a pair of
//! big rationals `(u, v)` meaning `u + v q`; multiplication reduces `q^2`
//! through the minimal polynomial, so all operations stay in the
//! two-dimensional representation. Because `q` is irrational in every case,
//! an element is zero exactly when both coordinates are zero; no numeric
//! tolerance appears anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::render;

/// The catalog of supported values of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldCase {
    /// `q = (sqrt(3) - 1) / 2`, root of `2 q^2 + 2 q - 1 = 0`.
    Sqrt3Half,
    /// `q = (3 - sqrt(5)) / 2`, root of `q^2 - 3 q + 1 = 0`.
    ThreeMinusSqrt5Half,
    /// `q = sqrt(2) - 1`, root of `q^2 + 2 q - 1 = 0`.
    Sqrt2Minus1,
    /// `q = (sqrt(5) - 1) / 2`, root of `q^2 + q - 1 = 0`.
    GoldenRatioConj,
}

/// Root selection data: `q = (a + b sqrt(d)) / c` with `d` a positive
/// nonsquare integer and `c > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl FieldCase {
    pub const ALL: [FieldCase; 4] = [
        FieldCase::Sqrt3Half,
        FieldCase::ThreeMinusSqrt5Half,
        FieldCase::Sqrt2Minus1,
        FieldCase::GoldenRatioConj,
    ];

    /// Integer coefficients `(a, b, c)` of the minimal polynomial
    /// `a q^2 + b q + c = 0`.
    pub fn minpoly(self) -> (i64, i64, i64) {
        match self {
            FieldCase::Sqrt3Half => (2, 2, -1),
            FieldCase::ThreeMinusSqrt5Half => (1, -3, 1),
            FieldCase::Sqrt2Minus1 => (1, 2, -1),
            FieldCase::GoldenRatioConj => (1, 1, -1),
        }
    }

    /// Which root of the minimal polynomial `q` is.
    pub fn root_form(self) -> RootForm {
        match self {
            FieldCase::Sqrt3Half => RootForm { a: -1, b: 1, c: 2, d: 3 },
            FieldCase::ThreeMinusSqrt5Half => RootForm { a: 3, b: -1, c: 2, d: 5 },
            FieldCase::Sqrt2Minus1 => RootForm { a: -1, b: 1, c: 1, d: 2 },
            FieldCase::GoldenRatioConj => RootForm { a: -1, b: 1, c: 2, d: 5 },
        }
    }

    /// Short name used on the command line and in log headers.
    pub fn cli_name(self) -> &'static str {
        match self {
            FieldCase::Sqrt3Half => "sqrt3",
            FieldCase::ThreeMinusSqrt5Half => "sqrt5half",
            FieldCase::Sqrt2Minus1 => "sqrt2",
            FieldCase::GoldenRatioConj => "golden",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<FieldCase> {
        FieldCase::ALL.iter().copied().find(|c| c.cli_name() == name)
    }

    /// Human-readable closed form of `q`.
    pub fn describe(self) -> &'static str {
        match self {
            FieldCase::Sqrt3Half => "(sqrt(3) - 1)/2",
            FieldCase::ThreeMinusSqrt5Half => "(3 - sqrt(5))/2",
            FieldCase::Sqrt2Minus1 => "sqrt(2) - 1",
            FieldCase::GoldenRatioConj => "(sqrt(5) - 1)/2",
        }
    }
}

impl fmt::Display for FieldCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by the zero element")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an element in the \"u + v q\" grammar")]
    Parse(String),
}

/// An exact element `u + v q` of `Q(q)`.
///
/// Coordinates are arbitrary-precision rationals kept in lowest terms with
/// positive denominator (the representation `num_rational` maintains), so
/// structural equality is value equality and elements can key maps.
/// The element remembers which catalog case it belongs to; arithmetic
/// between elements of different cases panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    case: FieldCase,
    u: BigRational,
    v: BigRational,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldElement {
    pub fn new(case: FieldCase, u: BigRational, v: BigRational) -> FieldElement {
        FieldElement { case, u, v }
    }

    /// The lattice point `m + n q`.
    pub fn from_integers(case: FieldCase, m: i64, n: i64) -> FieldElement {
        FieldElement::new(case, big(m), big(n))
    }

    pub fn from_rational(case: FieldCase, r: BigRational) -> FieldElement {
        FieldElement::new(case, r, BigRational::zero())
    }

    pub fn zero(case: FieldCase) -> FieldElement {
        FieldElement::from_integers(case, 0, 0)
    }

    pub fn one(case: FieldCase) -> FieldElement {
        FieldElement::from_integers(case, 1, 0)
    }

    /// The generator `q` itself.
    pub fn q(case: FieldCase) -> FieldElement {
        FieldElement::from_integers(case, 0, 1)
    }

    pub fn case(&self) -> FieldCase {
        self.case
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }

    /// Zero test. Exact: `q` is irrational, so `u + v q = 0` iff `u = v = 0`.
    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    fn assert_same_case(&self, other: &FieldElement, op: &str) {
        assert!(
            self.case == other.case,
            "mixed-case field operation rejected: {} between {} and {}",
            op,
            self.case,
            other.case
        );
    }

    /// Scale by a rational.
    pub fn scale(&self, r: &BigRational) -> FieldElement {
        FieldElement::new(self.case, &self.u * r, &self.v * r)
    }

    /// Value as `alpha + beta sqrt(d)` with rational `alpha`, `beta`,
    /// obtained by substituting the root form of `q`.
    fn surd_parts(&self) -> (BigRational, BigRational, i64) {
        let rf = self.case.root_form();
        let c = big(rf.c);
        let alpha = &self.u + &self.v * big(rf.a) / &c;
        let beta = &self.v * big(rf.b) / &c;
        (alpha, beta, rf.d)
    }

    /// Exact sign of the real value `u + v q`: `-1`, `0` or `+1`.
    ///
    /// Decided algebraically from the surd form `alpha + beta sqrt(d)`:
    /// when the signs of `alpha` and `beta` disagree the comparison of
    /// `alpha^2` with `beta^2 d` settles it. Constant number of
    /// big-rational operations, no iteration.
    pub fn signum(&self) -> i32 {
        let (alpha, beta, d) = self.surd_parts();
        let sa = rational_sign(&alpha);
        let sb = rational_sign(&beta);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (s, t) if s == t => s,
            (s, t) => {
                // alpha and beta pull in opposite directions; compare |alpha|
                // with |beta| sqrt(d) via squares.
                let lhs = &alpha * &alpha;
                let rhs = &beta * &beta * big(d);
                match lhs.cmp(&rhs) {
                    Ordering::Greater => s,
                    Ordering::Less => t,
                    // alpha^2 = beta^2 d with beta != 0 would make sqrt(d)
                    // rational; d is a nonsquare, so this cannot happen.
                    Ordering::Equal => unreachable!("sqrt({d}) cannot be rational"),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Exact comparison of real values. Panics on mixed cases.
    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        self.assert_same_case(other, "compare");
        (self - other).signum().cmp(&0)
    }

    pub fn abs(&self) -> FieldElement {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Algebraic conjugate `u + v q'` where `q'` is the other root of the
    /// minimal polynomial. Stays in the field since `q' = -b/a - q`.
    pub fn conjugate(&self) -> FieldElement {
        let (a, b, _) = self.case.minpoly();
        let u = &self.u - &self.v * big(b) / big(a);
        FieldElement::new(self.case, u, -&self.v)
    }

    /// Field norm `x * conj(x)`, a rational.
    pub fn norm(&self) -> BigRational {
        let (a, b, c) = self.case.minpoly();
        // (u + v q)(u + v q') = u^2 + u v (q + q') + v^2 q q'
        //                     = u^2 - u v b/a + v^2 c/a
        let uv = &self.u * &self.v;
        let vv = &self.v * &self.v;
        &self.u * &self.u - uv * big(b) / big(a) + vv * big(c) / big(a)
    }

    /// Exact multiplicative inverse.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero element has nonzero norm");
        Ok(self.conjugate().scale(&n.recip()))
    }

    /// Parse the textual grammar produced by `Display`: signed terms that are
    /// either plain rationals or rational multiples of `q`, e.g.
    /// `"1/2 - 1 q"`, `"q"`, `"-2"`, `"3 + q"`. Whitespace-insensitive.
    pub fn parse(case: FieldCase, input: &str) -> Result<FieldElement, FieldError> {
        render::parse_element(case, input)
    }

    /// Canonical rendering, always two components: `"u + v q"` or `"u - v q"`.
    pub fn render(&self) -> String {
        render::format_element(self)
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_case(rhs, "add");
        FieldElement::new(self.case, &self.u + &rhs.u, &self.v + &rhs.v)
    }
}
forward_binop!(Add, add);

impl Sub<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_case(rhs, "sub");
        FieldElement::new(self.case, &self.u - &rhs.u, &self.v - &rhs.v)
    }
}
forward_binop!(Sub, sub);

impl Mul<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_case(rhs, "mul");
        // (u1 + v1 q)(u2 + v2 q) with q^2 = (-b q - c)/a from the minpoly.
        let (a, b, c) = self.case.minpoly();
        let cross = &self.u * &rhs.v + &self.v * &rhs.u;
        let vv = &self.v * &rhs.v;
        let u = &self.u * &rhs.u - &vv * big(c) / big(a);
        let v = cross - &vv * big(b) / big(a);
        FieldElement::new(self.case, u, v)
    }
}
forward_binop!(Mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(self.case, -&self.u, -&self.v)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Arithmetic context for one catalog case with the handful of constants the
/// dilation equation needs precomputed.
#[derive(Clone, Debug)]
pub struct QuadField {
    case: FieldCase,
    q: FieldElement,
    inv_q: FieldElement,
    support_bound: FieldElement,
    inv_four_q: FieldElement,
}

impl QuadField {
    /// Build the context for one case. Total over the catalog.
    pub fn new(case: FieldCase) -> QuadField {
        let q = FieldElement::q(case);
        let inv_q = q.inv().expect("q is nonzero");
        let one_minus_q = FieldElement::one(case) - &q;
        let support_bound = &q * one_minus_q.inv().expect("q < 1");
        let inv_four_q = inv_q.scale(&BigRational::new(BigInt::from(1), BigInt::from(4)));
        QuadField { case, q, inv_q, support_bound, inv_four_q }
    }

    pub fn case(&self) -> FieldCase {
        self.case
    }

    pub fn q(&self) -> &FieldElement {
        &self.q
    }

    /// `1/q`. Has integer coordinates in every catalog case.
    pub fn inv_q(&self) -> &FieldElement {
        &self.inv_q
    }

    /// The support threshold `Q = q / (1 - q)`; `f` vanishes for `|x| > Q`.
    pub fn support_bound(&self) -> &FieldElement {
        &self.support_bound
    }

    /// The coefficient `1 / (4 q)` of the dilation equation.
    pub fn inv_four_q(&self) -> &FieldElement {
        &self.inv_four_q
    }

    pub fn element(&self, u: BigRational, v: BigRational) -> FieldElement {
        FieldElement::new(self.case, u, v)
    }

    pub fn from_integers(&self, m: i64, n: i64) -> FieldElement {
        FieldElement::from_integers(self.case, m, n)
    }

    pub fn integer(&self, m: i64) -> FieldElement {
        self.from_integers(m, 0)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero(self.case)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(self.case)
    }

    /// The minimal polynomial evaluated at `q` as a field element; exactly
    /// the zero element, which doubles as a construction self-test.
    pub fn minpoly_applied(&self) -> FieldElement {
        let (a, b, c) = self.case.minpoly();
        let qq = &self.q * &self.q;
        qq.scale(&big(a)) + self.q.scale(&big(b)) + self.integer(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(case: FieldCase) -> QuadField {
        QuadField::new(case)
    }

    fn el(case: FieldCase, m: i64, n: i64) -> FieldElement {
        FieldElement::from_integers(case, m, n)
    }

    #[test]
    fn minpoly_vanishes_on_q_in_every_case() {
        for case in FieldCase::ALL {
            assert!(field(case).minpoly_applied().is_zero(), "case {case}");
        }
    }

    #[test]
    fn root_form_satisfies_minpoly_symbolically() {
        // a q^2 + b q + c = 0 with q = (A + B sqrt(D))/C expands to
        // (rational) + (rational) sqrt(D) = 0; both parts must vanish.
        for case in FieldCase::ALL {
            let (a, b, c) = case.minpoly();
            let rf = case.root_form();
            // q = (A + B s)/C, q^2 = (A^2 + B^2 D + 2 A B s)/C^2 with s = sqrt(D)
            let c2 = rf.c * rf.c;
            let rat = a * (rf.a * rf.a + rf.b * rf.b * rf.d) + b * rf.a * rf.c + c * c2;
            let surd = a * 2 * rf.a * rf.b + b * rf.b * rf.c;
            assert_eq!((rat, surd), (0, 0), "case {case}");
        }
    }

    #[test]
    fn q_lies_strictly_between_zero_and_one() {
        for case in FieldCase::ALL {
            let f = field(case);
            assert_eq!(f.q().signum(), 1, "0 < q fails for {case}");
            assert_eq!((f.one() - f.q()).signum(), 1, "q < 1 fails for {case}");
            assert_eq!(f.support_bound().signum(), 1, "0 < Q fails for {case}");
        }
    }

    #[test]
    fn support_bound_closed_forms() {
        // golden: Q = 1 + q, sqrt5half: Q = 1 - q, sqrt2: Q = (1 + q)/2,
        // sqrt3: Q = (1 + 2q)/3 (rationalize q/(1-q) using sqrt(3) = 2q + 1).
        let cases = [
            (FieldCase::GoldenRatioConj, (1, 1, 1)),
            (FieldCase::ThreeMinusSqrt5Half, (1, -1, 1)),
            (FieldCase::Sqrt2Minus1, (1, 1, 2)),
            (FieldCase::Sqrt3Half, (1, 2, 3)),
        ];
        for (case, (num_u, num_v, den)) in cases {
            let f = field(case);
            let expected = el(case, num_u, num_v)
                .scale(&BigRational::new(BigInt::from(1), BigInt::from(den)));
            assert_eq!(*f.support_bound(), expected, "case {case}");
        }
    }

    #[test]
    fn inv_q_has_integer_coordinates_matching_case_identities() {
        let expected = [
            (FieldCase::Sqrt3Half, (2, 2)),
            (FieldCase::ThreeMinusSqrt5Half, (3, -1)),
            (FieldCase::Sqrt2Minus1, (2, 1)),
            (FieldCase::GoldenRatioConj, (1, 1)),
        ];
        for (case, (m, n)) in expected {
            let f = field(case);
            assert_eq!(*f.inv_q(), el(case, m, n), "1/q for {case}");
            assert!((f.q() * f.inv_q()).is_one());
        }
    }

    #[test]
    fn componentwise_addition() {
        let case = FieldCase::GoldenRatioConj;
        assert_eq!(el(case, 1, 0) + el(case, 0, 2), el(case, 1, 2));
        let x = el(case, 7, -3);
        assert!((&x + -&x).is_zero());
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = FieldElement::new(case, half.clone(), BigRational::one());
        let b = FieldElement::new(case, half, -BigRational::one());
        assert!((a + b).is_one());
    }

    #[test]
    fn q_squared_reduces_through_minpoly() {
        // sqrt3: q^2 = 1/2 - q; golden: q^2 = 1 - q.
        let s = FieldCase::Sqrt3Half;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            FieldElement::q(s) * FieldElement::q(s),
            FieldElement::new(s, half, -BigRational::one())
        );
        let g = FieldCase::GoldenRatioConj;
        assert_eq!(FieldElement::q(g) * FieldElement::q(g), el(g, 1, -1));
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let case = FieldCase::Sqrt2Minus1;
        let x = FieldElement::new(
            case,
            BigRational::new(BigInt::from(-5), BigInt::from(3)),
            BigRational::new(BigInt::from(7), BigInt::from(11)),
        );
        assert_eq!(FieldElement::one(case) * &x, x);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            FieldElement::q(FieldCase::GoldenRatioConj).inv().unwrap(),
            el(FieldCase::GoldenRatioConj, 1, 1)
        );
        assert_eq!(
            FieldElement::q(FieldCase::ThreeMinusSqrt5Half).inv().unwrap(),
            el(FieldCase::ThreeMinusSqrt5Half, 3, -1)
        );
        assert_eq!(
            FieldElement::q(FieldCase::Sqrt3Half).inv().unwrap(),
            el(FieldCase::Sqrt3Half, 2, 2)
        );
        assert_eq!(
            FieldElement::zero(FieldCase::Sqrt3Half).inv(),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn sign_examples() {
        // sqrt3: 2q > Q.
        let f = field(FieldCase::Sqrt3Half);
        let two_q = el(FieldCase::Sqrt3Half, 0, 2);
        assert_eq!((two_q - f.support_bound()).signum(), 1);
        assert_eq!(FieldElement::zero(FieldCase::Sqrt3Half).signum(), 0);

        // sqrt2: 1 - 2q - q^2 = 0 exactly.
        let case = FieldCase::Sqrt2Minus1;
        let q = FieldElement::q(case);
        let e = FieldElement::one(case) + el(case, 0, -2) - &q * &q;
        assert_eq!(e.signum(), 0);
        assert!(e.is_zero());
    }

    #[test]
    fn golden_boundary_is_exactly_q_over_one_minus_q() {
        let f = field(FieldCase::GoldenRatioConj);
        assert_eq!(*f.support_bound(), el(FieldCase::GoldenRatioConj, 1, 1));
        assert_eq!(f.support_bound(), f.inv_q());
    }

    #[test]
    #[should_panic(expected = "mixed-case")]
    fn mixed_case_operands_rejected() {
        let _ = el(FieldCase::Sqrt3Half, 1, 0) + el(FieldCase::GoldenRatioConj, 1, 0);
    }
}
