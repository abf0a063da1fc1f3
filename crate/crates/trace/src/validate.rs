//! Independent re-validation of proof logs.
//!
//! The checker replays every step with its own exact arithmetic: it
//! re-instantiates the dilation equation at each recorded substitution point,
//! re-applies the support test with exact signs, recomputes every linear
//! combination, and only then accepts a conclusion. It shares nothing with
//! the derivation engine but the field arithmetic itself.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use schilling_core::{in_support, FieldElement, Point, QuadField};

use crate::{ProofLog, StepId, StepKind, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepVerdict {
    pub id: StepId,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Problems independent of any single step: bad header, unordered ids,
    /// conclusions pointing nowhere.
    pub structure_errors: Vec<String>,
    pub steps: Vec<StepVerdict>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.structure_errors.is_empty() && self.steps.iter().all(|v| v.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StepVerdict> {
        self.steps.iter().filter(|v| !v.ok)
    }

    pub fn summary(&self) -> String {
        let failed = self.steps.iter().filter(|v| !v.ok).count();
        format!(
            "{} steps checked, {} failed, {} structural errors",
            self.steps.len(),
            failed,
            self.structure_errors.len()
        )
    }
}

type Terms = BTreeMap<Point, FieldElement>;

/// The dilation equation in homogeneous form at substitution point `at`:
/// `f(q x) - (1/4q) f(x-1) - (1/4q) f(x+1) - (2/4q) f(x) = 0`,
/// with coinciding points merged and zero coefficients dropped. This is the
/// checker's own instantiation; it must not call into the engine.
fn dilation_terms(field: &QuadField, at: &Point) -> Terms {
    let x = at.value();
    let one = field.one();
    let minus_c = -field.inv_four_q();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut terms = Terms::new();
    let mut add = |p: Point, c: FieldElement| {
        let entry = terms.entry(p).or_insert_with(|| field.zero());
        *entry = &*entry + &c;
    };
    add(Point::new(field.q() * x), one.clone());
    add(Point::new(x - &one), minus_c.clone());
    add(Point::new(x + &one), minus_c.clone());
    add(Point::new(x.clone()), minus_c.scale(&two));
    terms.retain(|_, c| !c.is_zero());
    terms
}

struct Checker<'a> {
    field: QuadField,
    log: &'a ProofLog,
    /// Relations established by earlier steps (instantiate/reduce/eliminate).
    relations: BTreeMap<StepId, Terms>,
    /// Points concluded zero, per step id (support_zero and conclude_zero).
    zeros: BTreeMap<StepId, Point>,
}

impl<'a> Checker<'a> {
    fn relation_before(&self, id: StepId, me: StepId) -> Result<&Terms, String> {
        if id >= me {
            return Err(format!("parent {id} does not precede step {me}"));
        }
        self.relations
            .get(&id)
            .ok_or_else(|| format!("parent {id} is not a relation step"))
    }

    fn check_step(&mut self, id: StepId, kind: &StepKind) -> Result<(), String> {
        match kind {
            StepKind::SupportZero { point } => {
                if in_support(&self.field, point) {
                    return Err(format!("|{point}| <= Q, support does not force zero"));
                }
                self.zeros.insert(id, point.clone());
            }
            StepKind::Instantiate { at, kept, dropped } => {
                let raw = dilation_terms(&self.field, at);
                let mut expect_kept = Terms::new();
                let mut expect_dropped = Vec::new();
                for (p, c) in raw {
                    if in_support(&self.field, &p) {
                        expect_kept.insert(p, c);
                    } else {
                        expect_dropped.push(p);
                    }
                }
                let kept_map: Terms = kept.iter().cloned().collect();
                if kept_map.len() != kept.len() {
                    return Err("duplicate points in kept terms".to_string());
                }
                if kept_map != expect_kept {
                    return Err(format!(
                        "kept terms disagree with re-instantiation at x = {at}"
                    ));
                }
                let mut dropped_sorted = dropped.clone();
                dropped_sorted.sort();
                if dropped_sorted != expect_dropped {
                    return Err(format!(
                        "dropped points disagree with the support test at x = {at}"
                    ));
                }
                self.relations.insert(id, kept_map);
            }
            StepKind::Reduce { source, removed } => {
                if removed.is_empty() {
                    return Err("reduce step removes nothing".to_string());
                }
                let mut terms = self.relation_before(*source, id)?.clone();
                for (p, zero_step) in removed {
                    if *zero_step >= id {
                        return Err(format!("zero step {zero_step} does not precede {id}"));
                    }
                    match self.zeros.get(zero_step) {
                        Some(z) if z == p => {}
                        Some(z) => {
                            return Err(format!("step {zero_step} concludes {z}, not {p}"));
                        }
                        None => {
                            return Err(format!("step {zero_step} does not conclude a zero"));
                        }
                    }
                    if terms.remove(p).is_none() {
                        return Err(format!("removed point {p} not in source relation"));
                    }
                }
                self.relations.insert(id, terms);
            }
            StepKind::EliminateRow { sources, result } => {
                if sources.is_empty() {
                    return Err("row combination without sources".to_string());
                }
                let mut combined = Terms::new();
                for (src, scale) in sources {
                    if scale.is_zero() {
                        return Err(format!("zero multiplier for parent {src}"));
                    }
                    let parent = self.relation_before(*src, id)?;
                    for (p, c) in parent {
                        let entry = combined
                            .entry(p.clone())
                            .or_insert_with(|| self.field.zero());
                        *entry = &*entry + &(c * scale);
                    }
                }
                combined.retain(|_, c| !c.is_zero());
                let result_map: Terms = result.iter().cloned().collect();
                if result_map.len() != result.len() {
                    return Err("duplicate points in result terms".to_string());
                }
                if result_map != combined {
                    return Err("recorded result is not the stated combination".to_string());
                }
                self.relations.insert(id, result_map);
            }
            StepKind::ConcludeZero { source, point } => {
                if *source >= id {
                    return Err(format!("parent {source} does not precede step {id}"));
                }
                if let Some(z) = self.zeros.get(source) {
                    // Wrapping a support-zero step.
                    let support_step = self
                        .log
                        .step(*source)
                        .map(|s| matches!(s.kind, StepKind::SupportZero { .. }))
                        .unwrap_or(false);
                    if !support_step {
                        return Err(format!("parent {source} is not a support-zero step"));
                    }
                    if z != point {
                        return Err(format!("support step {source} is for {z}, not {point}"));
                    }
                } else {
                    let terms = self.relation_before(*source, id)?;
                    if terms.len() != 1 {
                        return Err(format!(
                            "source relation has {} terms, expected exactly one",
                            terms.len()
                        ));
                    }
                    let (p, c) = terms.iter().next().expect("single term");
                    if p != point {
                        return Err(format!("single term is at {p}, not {point}"));
                    }
                    if c.is_zero() {
                        return Err("single term has zero coefficient".to_string());
                    }
                }
                self.zeros.insert(id, point.clone());
            }
        }
        Ok(())
    }
}

/// Re-execute every step of `log` and verify the conclusions.
///
/// Never panics on malformed input: structural problems (wrong schema or
/// minimal polynomial, unordered ids, dangling references) are reported in
/// the returned [`ValidationReport`].
pub fn validate(log: &ProofLog) -> ValidationReport {
    let mut report = ValidationReport::default();
    let h = &log.header;

    if h.schema != SCHEMA_VERSION {
        report
            .structure_errors
            .push(format!("unsupported schema {}", h.schema));
    }
    if h.minpoly != h.case.minpoly() {
        report.structure_errors.push(format!(
            "header minimal polynomial {:?} does not match case {} ({:?})",
            h.minpoly,
            h.case,
            h.case.minpoly()
        ));
    }
    let field = QuadField::new(h.case);
    if h.support_bound != *field.support_bound() {
        report
            .structure_errors
            .push("header support bound does not match the case".to_string());
    }

    let mut checker = Checker {
        field,
        log,
        relations: BTreeMap::new(),
        zeros: BTreeMap::new(),
    };

    let mut last_id: Option<StepId> = None;
    for step in &log.steps {
        if let Some(prev) = last_id {
            if step.id <= prev {
                report
                    .structure_errors
                    .push(format!("step ids not strictly increasing at {}", step.id));
            }
        }
        last_id = Some(step.id);
        let verdict = match checker.check_step(step.id, &step.kind) {
            Ok(()) => StepVerdict {
                id: step.id,
                ok: true,
                detail: None,
            },
            Err(msg) => StepVerdict {
                id: step.id,
                ok: false,
                detail: Some(msg),
            },
        };
        report.steps.push(verdict);
    }

    for (point, step) in &log.conclusions {
        let concluded = log.step(*step).map(|s| &s.kind);
        match concluded {
            Some(StepKind::ConcludeZero { point: p, .. }) if p == point => {}
            Some(_) => report.structure_errors.push(format!(
                "conclusion for {point} cites step {step}, which does not conclude it"
            )),
            None => report
                .structure_errors
                .push(format!("conclusion for {point} cites missing step {step}")),
        }
    }

    report
}
