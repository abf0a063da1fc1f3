//! Candidate substitution streams.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use schilling_core::{FieldCase, Point, QuadField};

/// How substitution points are generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The hand derivation's route: the case's special substitutions, then
    /// `x0 / q` for every target `x0`, with adaptive chasing of whatever
    /// unknowns turn up.
    Guided,
    /// Exhaustive sweep of `u + v q` with rational coordinates of denominator
    /// at most `denominator_bound` and magnitude at most `magnitude_bound`,
    /// ordered by (denominator, magnitude). No adaptive chasing.
    Grid {
        denominator_bound: u32,
        magnitude_bound: i64,
    },
    /// Guided first; fall back to a bounded grid for leftover targets.
    Auto,
    /// Exactly these substitution points (adaptive chasing stays on).
    /// Used by focused derivations and tests.
    Explicit(Vec<Point>),
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Guided => "guided",
            Strategy::Grid { .. } => "grid",
            Strategy::Auto => "auto",
            Strategy::Explicit(_) => "explicit",
        }
    }

    pub fn adaptive(&self) -> bool {
        !matches!(self, Strategy::Grid { .. })
    }

    /// The fallback sweep for `Auto`: denominators up to 4, magnitudes up to
    /// twice the largest target coordinate plus two.
    pub fn fallback_grid(targets: &[Point]) -> Strategy {
        let mut max_coord: i64 = 1;
        for t in targets {
            for r in [t.value().u(), t.value().v()] {
                let ceil = (r.numer().magnitude() + r.denom().magnitude()
                    - BigUint::from(1u32))
                    / r.denom().magnitude();
                let ceil = i64::try_from(ceil).unwrap_or(i64::MAX / 4);
                max_coord = max_coord.max(ceil);
            }
        }
        Strategy::Grid {
            denominator_bound: 4,
            magnitude_bound: 2 * max_coord + 2,
        }
    }
}

/// The fixed substitution points the hand derivation uses for each case,
/// negation-closed, in derivation order. The adaptive chase supplies
/// everything else.
pub fn special_substitutions(field: &QuadField) -> Vec<Point> {
    let coords: &[(i64, i64)] = match field.case() {
        // q < 1/2: x = 0 settles the origin; the rest is induction.
        FieldCase::Sqrt3Half => &[(0, 0)],
        // x = ±1 settles f(±q); x = ±(2 - q) the boundary points ±(1 - q).
        FieldCase::ThreeMinusSqrt5Half => &[(0, 0), (1, 0), (-1, 0), (2, -1), (-2, 1)],
        // x = ±1 settles f(±q); x = ±(1 + q) then f(±(1 - q)).
        FieldCase::Sqrt2Minus1 => &[(0, 0), (1, 0), (-1, 0), (1, 1), (-1, -1)],
        // x = 0, ±1, ±1/q feed the coupled linear system for f(0), f(±1),
        // f(±q); x = ±2 and ±(2/q - 1) = ±(1 + 2q) settle the next shell;
        // x = ±q the pair at ±(1 - q).
        FieldCase::GoldenRatioConj => &[
            (0, 0),
            (1, 0),
            (-1, 0),
            (1, 1),
            (-1, -1),
            (2, 0),
            (-2, 0),
            (1, 2),
            (-1, -2),
            (0, 1),
            (0, -1),
        ],
    };
    coords
        .iter()
        .map(|&(m, n)| Point::from_integers(field.case(), m, n))
        .collect()
}

/// The initial candidate stream for a strategy, deduplicated, deterministic.
pub fn generate_candidates(field: &QuadField, strategy: &Strategy, targets: &[Point]) -> Vec<Point> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |p: Point| {
        if seen.insert(p.clone()) {
            out.push(p);
        }
    };
    match strategy {
        Strategy::Guided | Strategy::Auto => {
            for p in special_substitutions(field) {
                push(p);
            }
            for t in targets {
                push(Point::new(t.value() * field.inv_q()));
            }
        }
        Strategy::Grid {
            denominator_bound,
            magnitude_bound,
        } => {
            // Enumerate coordinates per denominator, dedup by value, then
            // order by (common denominator, |u| + |v|, u, v).
            let mut pairs: BTreeSet<(BigRational, BigRational)> = BTreeSet::new();
            for den_u in 1..=*denominator_bound as i64 {
                for den_v in 1..=*denominator_bound as i64 {
                    for num_u in -magnitude_bound * den_u..=magnitude_bound * den_u {
                        for num_v in -magnitude_bound * den_v..=magnitude_bound * den_v {
                            let u = BigRational::new(BigInt::from(num_u), BigInt::from(den_u));
                            let v = BigRational::new(BigInt::from(num_v), BigInt::from(den_v));
                            pairs.insert((u, v));
                        }
                    }
                }
            }
            let mut sorted: Vec<(BigInt, BigRational, BigRational, BigRational)> = pairs
                .into_iter()
                .map(|(u, v)| {
                    let denom = u.denom().lcm(v.denom());
                    let magnitude = u.abs() + v.abs();
                    (denom, magnitude, u, v)
                })
                .collect();
            sorted.sort();
            for (_, _, u, v) in sorted {
                push(Point::new(field.element(u, v)));
            }
        }
        Strategy::Explicit(points) => {
            for p in points {
                push(p.clone());
            }
        }
    }
    out
}
