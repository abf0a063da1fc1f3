//! Plain-text narration of a proof log, in step order.

use std::fmt::Write;

use schilling_core::{FieldElement, Point};

use crate::{ProofLog, StepKind};

fn term(p: &Point, c: &FieldElement) -> String {
    format!("({}) f({})", c, p)
}

fn relation(terms: &[(Point, FieldElement)]) -> String {
    if terms.is_empty() {
        return "0 = 0".to_string();
    }
    let body: Vec<String> = terms.iter().map(|(p, c)| term(p, c)).collect();
    format!("{} = 0", body.join(" + "))
}

/// Deterministic human-readable rendering of a log.
pub fn render_human(log: &ProofLog) -> String {
    let h = &log.header;
    let mut out = String::new();
    let _ = writeln!(out, "certificate for case {}  (q = {})", h.case, h.case.describe());
    let (a, b, c) = h.minpoly;
    let signed = |coeff: i64, sym: &str| {
        if coeff < 0 {
            format!(" - {}{sym}", -coeff)
        } else {
            format!(" + {coeff}{sym}")
        }
    };
    let _ = writeln!(
        out,
        "minimal polynomial: {a} q^2{}{} = 0",
        signed(b, " q"),
        signed(c, "")
    );
    let _ = writeln!(
        out,
        "support bound: Q = {}; the support condition forces f(x) = 0 for |x| > Q",
        h.support_bound
    );
    let _ = writeln!(
        out,
        "parameters: strategy={}, window={}, max_substitutions={}, max_relations={}",
        h.params.strategy,
        h.params
            .window
            .map_or_else(|| "-".to_string(), |w| w.to_string()),
        h.params.max_substitutions,
        h.params.max_relations
    );
    let _ = writeln!(out);

    for step in &log.steps {
        let id = step.id;
        match &step.kind {
            StepKind::SupportZero { point } => {
                let _ = writeln!(
                    out,
                    "step {id}: |{point}| > Q, so f({point}) = 0 by the support condition"
                );
            }
            StepKind::Instantiate { at, kept, dropped } => {
                let _ = writeln!(
                    out,
                    "step {id}: substitute x = {at} into f(q x) = (1/(4 q)) [f(x-1) + f(x+1) + 2 f(x)]"
                );
                if !dropped.is_empty() {
                    let names: Vec<String> =
                        dropped.iter().map(|p| format!("f({p})")).collect();
                    let _ = writeln!(
                        out,
                        "         support drops {} (each argument exceeds Q)",
                        names.join(", ")
                    );
                }
                let _ = writeln!(out, "         relation: {}", relation(kept));
            }
            StepKind::Reduce { source, removed } => {
                let names: Vec<String> = removed
                    .iter()
                    .map(|(p, z)| format!("f({p}) (zero by step {z})"))
                    .collect();
                let _ = writeln!(
                    out,
                    "step {id}: in the relation of step {source}, drop {}",
                    names.join(", ")
                );
            }
            StepKind::EliminateRow { sources, result } => {
                let combo: Vec<String> = sources
                    .iter()
                    .map(|(s, scale)| format!("({scale}) x step {s}"))
                    .collect();
                let _ = writeln!(out, "step {id}: combine rows {}", combo.join(" + "));
                let _ = writeln!(out, "         relation: {}", relation(result));
            }
            StepKind::ConcludeZero { source, point } => {
                let _ = writeln!(
                    out,
                    "step {id}: step {source} forces the single unknown f({point}); conclude f({point}) = 0"
                );
            }
        }
    }

    let _ = writeln!(out);
    let _ = writeln!(out, "conclusions:");
    for (point, step) in &log.conclusions {
        let _ = writeln!(out, "  f({point}) = 0   [step {step}]");
    }
    out
}
