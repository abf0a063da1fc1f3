//! Saturation outcome and its conversion to a serializable proof log.

use std::collections::{BTreeMap, BTreeSet};

use schilling_core::{FieldCase, Point, QuadField};
use schilling_trace::{
    Header, ProofLog, RunParams, StepId, StepKind, TraceStep, SCHEMA_VERSION,
};

use crate::state::Stats;

/// Outcome of a saturation run. `proven` holds every point concluded zero
/// (targets and intermediates alike) with its concluding step; `unresolved`
/// is the subset of targets the run could not settle within budget.
#[derive(Clone, Debug)]
pub struct ProofResult {
    pub case: FieldCase,
    pub targets: Vec<Point>,
    pub proven: BTreeMap<Point, StepId>,
    pub unresolved: BTreeSet<Point>,
    pub stats: Stats,
    pub steps: Vec<TraceStep>,
    pub params: RunParams,
}

impl ProofResult {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// The serializable log: steps reachable from the target conclusions,
    /// renumbered densely in their original (topological) order. Deterministic
    /// byte-for-byte for identical runs.
    pub fn to_log(&self) -> ProofLog {
        emit(self)
    }
}

fn parents(kind: &StepKind) -> Vec<StepId> {
    match kind {
        StepKind::SupportZero { .. } | StepKind::Instantiate { .. } => Vec::new(),
        StepKind::Reduce { source, removed } => {
            let mut ids = vec![*source];
            ids.extend(removed.iter().map(|(_, z)| *z));
            ids
        }
        StepKind::EliminateRow { sources, .. } => sources.iter().map(|(id, _)| *id).collect(),
        StepKind::ConcludeZero { source, .. } => vec![*source],
    }
}

fn remap_kind(kind: &StepKind, map: &BTreeMap<StepId, StepId>) -> StepKind {
    let m = |id: &StepId| map[id];
    match kind {
        StepKind::SupportZero { point } => StepKind::SupportZero {
            point: point.clone(),
        },
        StepKind::Instantiate { at, kept, dropped } => StepKind::Instantiate {
            at: at.clone(),
            kept: kept.clone(),
            dropped: dropped.clone(),
        },
        StepKind::Reduce { source, removed } => StepKind::Reduce {
            source: m(source),
            removed: removed.iter().map(|(p, z)| (p.clone(), m(z))).collect(),
        },
        StepKind::EliminateRow { sources, result } => StepKind::EliminateRow {
            sources: sources.iter().map(|(id, s)| (m(id), s.clone())).collect(),
            result: result.clone(),
        },
        StepKind::ConcludeZero { source, point } => StepKind::ConcludeZero {
            source: m(source),
            point: point.clone(),
        },
    }
}

/// Emit the pruned, topologically ordered log for a completed run.
pub fn emit(result: &ProofResult) -> ProofLog {
    let field = QuadField::new(result.case);

    // Conclusions: the proven targets, in canonical point order.
    let conclusions_src: Vec<(Point, StepId)> = {
        let target_set: BTreeSet<&Point> = result.targets.iter().collect();
        result
            .proven
            .iter()
            .filter(|(p, _)| target_set.contains(p))
            .map(|(p, id)| (p.clone(), *id))
            .collect()
    };

    // Steps are recorded with parents preceding children, so one reverse
    // sweep collects everything reachable from the conclusions.
    let mut needed: BTreeSet<StepId> = conclusions_src.iter().map(|(_, id)| *id).collect();
    for step in result.steps.iter().rev() {
        if needed.contains(&step.id) {
            needed.extend(parents(&step.kind));
        }
    }

    let remap: BTreeMap<StepId, StepId> = needed
        .iter()
        .enumerate()
        .map(|(new, old)| (*old, new as StepId))
        .collect();

    let steps: Vec<TraceStep> = result
        .steps
        .iter()
        .filter(|s| needed.contains(&s.id))
        .map(|s| TraceStep {
            id: remap[&s.id],
            kind: remap_kind(&s.kind, &remap),
        })
        .collect();

    let conclusions: Vec<(Point, StepId)> = conclusions_src
        .into_iter()
        .map(|(p, id)| (p, remap[&id]))
        .collect();

    ProofLog {
        header: Header {
            schema: SCHEMA_VERSION,
            tool: format!("schilling-cert/{}", env!("CARGO_PKG_VERSION")),
            case: result.case,
            minpoly: result.case.minpoly(),
            support_bound: field.support_bound().clone(),
            params: result.params.clone(),
        },
        steps,
        conclusions,
    }
}
