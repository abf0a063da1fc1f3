//! Exact linear relations among the unknowns `f(x)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use schilling_core::{in_support, FieldElement, Point, QuadField};

pub type Terms = BTreeMap<Point, FieldElement>;

/// Where a relation came from: the substitution point, and the points whose
/// terms were dropped because they lie strictly beyond the support bound.
/// Re-instantiating the origin reproduces the relation exactly; the trace
/// validator relies on that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origin {
    pub substitution: Point,
    pub eliminated: Vec<Point>,
}

/// A homogeneous relation `sum c_i f(p_i) = 0` with nonzero exact
/// coefficients. An empty term map is the trivial relation `0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Terms,
    pub origin: Origin,
    pub normalized: bool,
}

impl Relation {
    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms_vec(&self) -> Vec<(Point, FieldElement)> {
        self.terms
            .iter()
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect()
    }

    /// Scale so the lexicographically first term has coefficient one.
    pub fn normalize(&mut self) {
        if let Some(lead) = self.terms.values().next().cloned() {
            if !lead.is_one() {
                let inv = lead.inv().expect("relation coefficients are nonzero");
                for c in self.terms.values_mut() {
                    *c = &*c * &inv;
                }
            }
        }
        self.normalized = true;
    }

    /// Canonical identity of the normalized relation, used to drop duplicate
    /// relations arriving from different substitutions.
    pub fn fingerprint(&self) -> String {
        let mut copy = self.clone();
        copy.normalize();
        let parts: Vec<String> = copy
            .terms
            .iter()
            .map(|(p, c)| format!("{}:{}", p.key(), c))
            .collect();
        parts.join(";")
    }
}

/// The dilation equation at substitution point `at`, in homogeneous form:
///
/// ```text
/// f(q x) - (1/4q) f(x - 1) - (1/4q) f(x + 1) - (2/4q) f(x) = 0
/// ```
///
/// Coinciding argument points are merged exactly (this happens at every
/// boundary derivation), terms cancelling to zero are removed, and every term
/// whose point lies strictly beyond the support bound is dropped and recorded
/// in the origin.
pub fn instantiate(field: &QuadField, at: &Point) -> Relation {
    let x = at.value();
    let one = field.one();
    let minus_c = -field.inv_four_q();
    let two = BigRational::from_integer(BigInt::from(2));

    let mut raw = Terms::new();
    let mut add = |p: Point, c: FieldElement| {
        let entry = raw.entry(p).or_insert_with(|| field.zero());
        *entry = &*entry + &c;
    };
    add(Point::new(field.q() * x), one.clone());
    add(Point::new(x - &one), minus_c.clone());
    add(Point::new(x + &one), minus_c.clone());
    add(Point::new(x.clone()), minus_c.scale(&two));
    raw.retain(|_, c| !c.is_zero());

    let mut terms = Terms::new();
    let mut eliminated = Vec::new();
    for (p, c) in raw {
        if in_support(field, &p) {
            terms.insert(p, c);
        } else {
            eliminated.push(p);
        }
    }

    Relation {
        terms,
        origin: Origin {
            substitution: at.clone(),
            eliminated,
        },
        normalized: false,
    }
}

/// Outcome of removing known-zero terms from a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Two or more unknowns remain.
    Relation(Relation),
    /// Exactly one term is left; its coefficient is nonzero by the term
    /// invariant, so the point is forced to zero.
    Zero { point: Point, coefficient: FieldElement },
    /// Nothing is left: the relation is implied by the known zeros.
    Trivial,
}

/// Drop the terms whose points satisfy `is_zero` and classify what remains.
pub fn reduce_with(rel: &Relation, is_zero: impl Fn(&Point) -> bool) -> Reduction {
    let mut out = rel.clone();
    out.terms.retain(|p, _| !is_zero(p));
    match out.terms.len() {
        0 => Reduction::Trivial,
        1 => {
            let (point, coefficient) = out.terms.into_iter().next().expect("one term");
            Reduction::Zero { point, coefficient }
        }
        _ => Reduction::Relation(out),
    }
}
