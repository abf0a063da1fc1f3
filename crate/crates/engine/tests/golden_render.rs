//! Frozen human-readable renders for three unit-window runs.
//!
//! These files were generated by the implementation and reviewed by hand
//! against the derivation they narrate. They pin the rendering (and,
//! indirectly, the deterministic step order); the independent validator in
//! the trace crate remains the correctness gate.

use schilling_core::{FieldCase, QuadField};
use schilling_engine::{emit, verify_theorem, Budget};
use schilling_trace::render_human;

fn check(case: FieldCase, frozen: &str) {
    let field = QuadField::new(case);
    let result = verify_theorem(&field, 1, Budget::default());
    assert!(result.is_complete());
    let rendered = render_human(&emit(&result));
    assert_eq!(rendered, frozen, "render drifted for case {case}");
}

#[test]
fn sqrt2_unit_window_render() {
    check(
        FieldCase::Sqrt2Minus1,
        include_str!("golden/sqrt2-w1.txt"),
    );
}

#[test]
fn golden_unit_window_render() {
    check(
        FieldCase::GoldenRatioConj,
        include_str!("golden/golden-w1.txt"),
    );
}

#[test]
fn sqrt3_unit_window_render() {
    check(FieldCase::Sqrt3Half, include_str!("golden/sqrt3-w1.txt"));
}
