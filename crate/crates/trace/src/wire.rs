//! On-disk JSON shapes and their conversions to the in-memory types.
//!
//! Rationals travel as `"p/r"` strings (lowest terms, positive denominator),
//! field elements and points as `{"u": "p/r", "v": "p/r"}` objects. The
//! field case lives only in the header; deserialization threads it through
//! every element.

use serde::{Deserialize, Serialize};

use schilling_core::render::{format_ratio, parse_ratio};
use schilling_core::{FieldCase, FieldElement, Point};

use crate::{Header, ProofLog, RunParams, StepKind, TraceError, TraceStep};

#[derive(Serialize, Deserialize)]
pub(crate) struct WireLog {
    schema: u32,
    tool: String,
    case: String,
    minpoly: [i64; 3],
    support_bound: WireElem,
    params: WireParams,
    steps: Vec<WireStep>,
    conclusions: Vec<WireConclusion>,
}

#[derive(Serialize, Deserialize)]
struct WireParams {
    strategy: String,
    window: Option<u32>,
    max_substitutions: u64,
    max_relations: u64,
}

#[derive(Serialize, Deserialize)]
struct WireElem {
    u: String,
    v: String,
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    point: WireElem,
    coeff: WireElem,
}

#[derive(Serialize, Deserialize)]
struct WireRemoved {
    point: WireElem,
    zero: u64,
}

#[derive(Serialize, Deserialize)]
struct WireSource {
    step: u64,
    scale: WireElem,
}

#[derive(Serialize, Deserialize)]
struct WireConclusion {
    point: WireElem,
    step: u64,
}

#[derive(Serialize, Deserialize)]
struct WireStep {
    id: u64,
    #[serde(flatten)]
    kind: WireKind,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WireKind {
    SupportZero {
        point: WireElem,
    },
    Instantiate {
        at: WireElem,
        kept: Vec<WireTerm>,
        dropped: Vec<WireElem>,
    },
    Reduce {
        source: u64,
        removed: Vec<WireRemoved>,
    },
    EliminateRow {
        sources: Vec<WireSource>,
        result: Vec<WireTerm>,
    },
    ConcludeZero {
        source: u64,
        point: WireElem,
    },
}

fn elem_out(e: &FieldElement) -> WireElem {
    WireElem {
        u: format_ratio(e.u()),
        v: format_ratio(e.v()),
    }
}

fn point_out(p: &Point) -> WireElem {
    elem_out(p.value())
}

fn elem_in(case: FieldCase, w: &WireElem) -> Result<FieldElement, TraceError> {
    let u = parse_ratio(&w.u)
        .ok_or_else(|| TraceError::Malformed(format!("bad rational {:?}", w.u)))?;
    let v = parse_ratio(&w.v)
        .ok_or_else(|| TraceError::Malformed(format!("bad rational {:?}", w.v)))?;
    Ok(FieldElement::new(case, u, v))
}

fn point_in(case: FieldCase, w: &WireElem) -> Result<Point, TraceError> {
    Ok(Point::new(elem_in(case, w)?))
}

pub(crate) fn to_wire(log: &ProofLog) -> WireLog {
    let h = &log.header;
    WireLog {
        schema: h.schema,
        tool: h.tool.clone(),
        case: h.case.cli_name().to_string(),
        minpoly: [h.minpoly.0, h.minpoly.1, h.minpoly.2],
        support_bound: elem_out(&h.support_bound),
        params: WireParams {
            strategy: h.params.strategy.clone(),
            window: h.params.window,
            max_substitutions: h.params.max_substitutions,
            max_relations: h.params.max_relations,
        },
        steps: log
            .steps
            .iter()
            .map(|s| WireStep {
                id: s.id,
                kind: match &s.kind {
                    StepKind::SupportZero { point } => WireKind::SupportZero {
                        point: point_out(point),
                    },
                    StepKind::Instantiate { at, kept, dropped } => WireKind::Instantiate {
                        at: point_out(at),
                        kept: kept
                            .iter()
                            .map(|(p, c)| WireTerm {
                                point: point_out(p),
                                coeff: elem_out(c),
                            })
                            .collect(),
                        dropped: dropped.iter().map(point_out).collect(),
                    },
                    StepKind::Reduce { source, removed } => WireKind::Reduce {
                        source: *source,
                        removed: removed
                            .iter()
                            .map(|(p, z)| WireRemoved {
                                point: point_out(p),
                                zero: *z,
                            })
                            .collect(),
                    },
                    StepKind::EliminateRow { sources, result } => WireKind::EliminateRow {
                        sources: sources
                            .iter()
                            .map(|(id, scale)| WireSource {
                                step: *id,
                                scale: elem_out(scale),
                            })
                            .collect(),
                        result: result
                            .iter()
                            .map(|(p, c)| WireTerm {
                                point: point_out(p),
                                coeff: elem_out(c),
                            })
                            .collect(),
                    },
                    StepKind::ConcludeZero { source, point } => WireKind::ConcludeZero {
                        source: *source,
                        point: point_out(point),
                    },
                },
            })
            .collect(),
        conclusions: log
            .conclusions
            .iter()
            .map(|(p, step)| WireConclusion {
                point: point_out(p),
                step: *step,
            })
            .collect(),
    }
}

pub(crate) fn from_wire(wire: WireLog) -> Result<ProofLog, TraceError> {
    let case = FieldCase::from_cli_name(&wire.case)
        .ok_or_else(|| TraceError::Malformed(format!("unknown case {:?}", wire.case)))?;
    let header = Header {
        schema: wire.schema,
        tool: wire.tool,
        case,
        minpoly: (wire.minpoly[0], wire.minpoly[1], wire.minpoly[2]),
        support_bound: elem_in(case, &wire.support_bound)?,
        params: RunParams {
            strategy: wire.params.strategy,
            window: wire.params.window,
            max_substitutions: wire.params.max_substitutions,
            max_relations: wire.params.max_relations,
        },
    };
    let mut steps = Vec::with_capacity(wire.steps.len());
    for s in &wire.steps {
        let kind = match &s.kind {
            WireKind::SupportZero { point } => StepKind::SupportZero {
                point: point_in(case, point)?,
            },
            WireKind::Instantiate { at, kept, dropped } => StepKind::Instantiate {
                at: point_in(case, at)?,
                kept: kept
                    .iter()
                    .map(|t| Ok((point_in(case, &t.point)?, elem_in(case, &t.coeff)?)))
                    .collect::<Result<_, TraceError>>()?,
                dropped: dropped
                    .iter()
                    .map(|p| point_in(case, p))
                    .collect::<Result<_, _>>()?,
            },
            WireKind::Reduce { source, removed } => StepKind::Reduce {
                source: *source,
                removed: removed
                    .iter()
                    .map(|r| Ok((point_in(case, &r.point)?, r.zero)))
                    .collect::<Result<_, TraceError>>()?,
            },
            WireKind::EliminateRow { sources, result } => StepKind::EliminateRow {
                sources: sources
                    .iter()
                    .map(|s| Ok((s.step, elem_in(case, &s.scale)?)))
                    .collect::<Result<_, TraceError>>()?,
                result: result
                    .iter()
                    .map(|t| Ok((point_in(case, &t.point)?, elem_in(case, &t.coeff)?)))
                    .collect::<Result<_, TraceError>>()?,
            },
            WireKind::ConcludeZero { source, point } => StepKind::ConcludeZero {
                source: *source,
                point: point_in(case, point)?,
            },
        };
        steps.push(TraceStep { id: s.id, kind });
    }
    let conclusions = wire
        .conclusions
        .iter()
        .map(|c| Ok((point_in(case, &c.point)?, c.step)))
        .collect::<Result<_, TraceError>>()?;
    Ok(ProofLog {
        header,
        steps,
        conclusions,
    })
}
