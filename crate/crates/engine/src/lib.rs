//! Derivation engine for the Schilling dilation problem.
//!
//! The engine proves statements of the form `f(x) = 0` for exact lattice
//! points `x` in `Z + qZ`, where `f` is any solution of the dilation equation
//! with the compact-support side condition. It works the way the hand
//! derivation does, but mechanically:
//!
//! 1. instantiate the equation at a substitution point, dropping every term
//!    whose argument lies strictly beyond the support bound `Q`;
//! 2. remove terms already proven zero (unit propagation);
//! 3. periodically run exact Gaussian elimination over the accumulated
//!    relations to crack coupled systems that propagation alone cannot;
//! 4. chase every still-unknown point `p` with the follow-up substitution
//!    `p / q`, which is exactly the induction step of the hand proof.
//!
//! Every move is recorded as a trace step, so a completed run can be emitted
//! as a [`schilling_trace::ProofLog`] and re-checked by the independent
//! validator.

mod relation;
mod result;
mod state;
mod strategy;

pub use relation::{instantiate, reduce_with, Origin, Reduction, Relation};
pub use result::{emit, ProofResult};
pub use state::{Budget, ProofState, Stats};
pub use strategy::{generate_candidates, special_substitutions, Strategy};

use schilling_core::{LatticeWindow, Point, QuadField};
use schilling_trace::RunParams;

/// Prove as many of `targets` zero as the candidate strategy and budget
/// allow. Returns a partial result (never an error) when the budget runs out.
pub fn saturate(
    field: &QuadField,
    targets: &[Point],
    strategy: &Strategy,
    budget: Budget,
) -> ProofResult {
    saturate_with_window(field, targets, strategy, budget, None)
}

/// Finite-window instance of the vanishing theorem: prove every lattice point
/// `m + n q` with `|m|, |n| <= window` zero.
pub fn verify_theorem(field: &QuadField, window: u32, budget: Budget) -> ProofResult {
    verify_theorem_with(field, window, &Strategy::Auto, budget)
}

/// Same targets as [`verify_theorem`], explicit candidate strategy.
pub fn verify_theorem_with(
    field: &QuadField,
    window: u32,
    strategy: &Strategy,
    budget: Budget,
) -> ProofResult {
    let targets: Vec<Point> = LatticeWindow::new(window)
        .points(field)
        .into_iter()
        .map(|lp| lp.point)
        .collect();
    saturate_with_window(field, &targets, strategy, budget, Some(window))
}

fn saturate_with_window(
    field: &QuadField,
    targets: &[Point],
    strategy: &Strategy,
    budget: Budget,
    window: Option<u32>,
) -> ProofResult {
    let params = RunParams {
        strategy: strategy.name().to_string(),
        window,
        max_substitutions: budget.max_substitutions as u64,
        max_relations: budget.max_relations as u64,
    };

    // Dedup targets, preserving first-seen order.
    let mut seen = std::collections::BTreeSet::new();
    let requested: Vec<Point> = targets
        .iter()
        .filter(|p| seen.insert((*p).clone()))
        .cloned()
        .collect();

    let mut state = ProofState::new(field.clone(), budget);

    // Targets beyond the support bound are zero outright.
    for t in &requested {
        state.assert_support_zero(t);
    }
    state.propagate();

    let run_phase = |state: &mut ProofState, candidates: Vec<Point>, adaptive: bool| {
        state.set_adaptive(adaptive);
        state.enqueue_candidates(candidates);
        while !state.all_known(&requested) && !state.budget_exhausted() {
            let Some(y) = state.next_candidate() else {
                break;
            };
            state.ingest(&y);
            state.propagate();
            if state.cadence_reached() {
                state.eliminate();
            }
        }
        if !state.all_known(&requested) {
            state.eliminate();
        }
    };

    run_phase(
        &mut state,
        generate_candidates(field, strategy, &requested),
        strategy.adaptive(),
    );

    // Fallback sweep: a bounded grid of small-denominator substitution points
    // for targets the guided stream left open.
    if !state.budget_exhausted()
        && !state.all_known(&requested)
        && matches!(strategy, Strategy::Auto)
    {
        let grid = Strategy::fallback_grid(&requested);
        run_phase(&mut state, generate_candidates(field, &grid, &requested), true);
    }

    state.into_result(field.case(), requested, params)
}
