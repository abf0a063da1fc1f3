//! Canonical locations on the lattice `Z + qZ` and its rational refinements.
//!
//! A [`Point`] is a field element used as a function argument. Points order
//! and hash by their canonical coordinate pair, so they can key the maps the
//! derivation engine and the trace checker build; the ordering is a fixed
//! total order on canonical keys, not the real-number order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::quadfield::{FieldCase, FieldElement, QuadField};
use crate::render;

/// A function-argument location, keyed by its exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(FieldElement);

impl Point {
    pub fn new(value: FieldElement) -> Point {
        Point(value)
    }

    pub fn from_integers(case: FieldCase, m: i64, n: i64) -> Point {
        Point(FieldElement::from_integers(case, m, n))
    }

    pub fn value(&self) -> &FieldElement {
        &self.0
    }

    pub fn case(&self) -> FieldCase {
        self.0.case()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn negated(&self) -> Point {
        Point(-&self.0)
    }

    /// Canonical key string `"u_p/r|v_p/r"`; two points are equal iff their
    /// keys are equal iff their elements are equal.
    pub fn key(&self) -> String {
        format!(
            "{}|{}",
            render::format_ratio(self.0.u()),
            render::format_ratio(self.0.v())
        )
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Point) -> Ordering {
        (self.0.case(), self.0.u(), self.0.v()).cmp(&(
            other.0.case(),
            other.0.u(),
            other.0.v(),
        ))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Point) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Support test from the problem's second condition: `true` iff `|x| <= Q`,
/// i.e. the point is NOT forced to zero outright. Points exactly on the
/// boundary `|x| = Q` are kept as unknowns; the condition is strict.
pub fn in_support(field: &QuadField, p: &Point) -> bool {
    let q_minus = field.support_bound() - p.value();
    let q_plus = field.support_bound() + p.value();
    q_minus.signum() >= 0 && q_plus.signum() >= 0
}

/// A lattice point together with its integer tag `m + n q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub m: i64,
    pub n: i64,
    pub point: Point,
}

/// The finite window `{ m + n q : |m| <= N, |n| <= N }` of `Z + qZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeWindow {
    bound: u32,
}

impl LatticeWindow {
    pub fn new(bound: u32) -> LatticeWindow {
        LatticeWindow { bound }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `(2N + 1)^2`.
    pub fn len(&self) -> usize {
        let side = 2 * self.bound as usize + 1;
        side * side
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All window points, deduplicated by key, tagged with `(m, n)`.
    /// Deterministic order: row-major in `(m, n)`.
    pub fn points(&self, field: &QuadField) -> Vec<LatticePoint> {
        let n = self.bound as i64;
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(self.len());
        for m in -n..=n {
            for k in -n..=n {
                let point = Point::new(field.from_integers(m, k));
                if seen.insert(point.clone()) {
                    out.push(LatticePoint { m, n: k, point });
                }
            }
        }
        out
    }
}

/// Truncation bounds for the infinite base families: the generators emit
/// `m` and `n` up to these limits (inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetBounds {
    pub max_m: i64,
    pub max_n: i64,
}

impl SetBounds {
    pub fn new(max_m: i64, max_n: i64) -> SetBounds {
        SetBounds { max_m, max_n }
    }

    /// Default truncation covering a window of half-width `N`.
    pub fn for_window(window: u32) -> SetBounds {
        let b = 2 * window as i64;
        SetBounds { max_m: b, max_n: b }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    #[error("family index {index} is not defined for case {case}")]
    UnsupportedIndex { case: FieldCase, index: u32 },
}

/// The finite truncation of the n-th induction family for the given case.
///
/// These are the negation-closed point families the hand derivation walks
/// through: a base family (index 0 for the sqrt3 case, index 1 for the
/// others) consisting mostly of points beyond the support bound, and for
/// larger indices the finite sets `{ ±(m - c n q) }` the induction step
/// consumes. The sqrt2 case reuses the sqrt5half definitions; its base-family
/// index therefore also starts at 1.
pub fn induction_set(
    field: &QuadField,
    index: u32,
    bounds: &SetBounds,
) -> Result<Vec<Point>, SetError> {
    let case = field.case();
    let mut set: BTreeSet<Point> = BTreeSet::new();
    let mut put = |e: FieldElement| {
        set.insert(Point::new(-&e));
        set.insert(Point::new(e));
    };
    match case {
        FieldCase::Sqrt3Half => {
            if index == 0 {
                // ±(m + 2nq) and ±(m + 1 + n - 2nq), m, n >= 0
                for m in 0..=bounds.max_m {
                    for n in 0..=bounds.max_n {
                        put(field.from_integers(m, 2 * n));
                        put(field.from_integers(m + 1 + n, -2 * n));
                    }
                }
            } else {
                // ±(m - 2nq), m in 1..=n
                let n = index as i64;
                for m in 1..=n {
                    put(field.from_integers(m, -2 * n));
                }
            }
        }
        FieldCase::ThreeMinusSqrt5Half | FieldCase::Sqrt2Minus1 => {
            if index == 0 {
                return Err(SetError::UnsupportedIndex { case, index });
            }
            if index == 1 {
                // ±(m + nq) and ±(m + 1 + n - (n+1)q), m, n >= 0
                for m in 0..=bounds.max_m {
                    for n in 0..=bounds.max_n {
                        put(field.from_integers(m, n));
                        put(field.from_integers(m + 1 + n, -(n + 1)));
                    }
                }
            } else {
                // ±(m - nq), m in 1..=n-1
                let n = index as i64;
                for m in 1..n {
                    put(field.from_integers(m, -n));
                }
            }
        }
        FieldCase::GoldenRatioConj => {
            if index == 0 {
                return Err(SetError::UnsupportedIndex { case, index });
            }
            if index == 1 {
                // ±(m + nq), ±(m + 1 + n - nq), and ±(1 - q), m, n >= 0
                for m in 0..=bounds.max_m {
                    for n in 0..=bounds.max_n {
                        put(field.from_integers(m, n));
                        put(field.from_integers(m + 1 + n, -n));
                    }
                }
                put(field.from_integers(1, -1));
            } else {
                // ±(m - nq), m in 1..=n
                let n = index as i64;
                for m in 1..=n {
                    put(field.from_integers(m, -n));
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}
