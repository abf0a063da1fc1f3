//! Refinement behaviour of the reconstructed solutions, pinning the frozen
//! tolerances to fresh measurements.

use schilling_cascade::{
    build_solution, exact_check_n1, expected_mass, residual, residual_tolerance,
};

use num_bigint::BigInt;
use num_rational::BigRational;

fn half_width(n: u32) -> f64 {
    let q = 2f64.powf(-1.0 / n as f64);
    q / (1.0 - q) + 1.6
}

#[test]
fn residuals_shrink_under_refinement_orders_two_and_three() {
    for n in [2u32, 3] {
        let l = half_width(n);
        let mut residuals = Vec::new();
        for k in [10u32, 11, 12] {
            let h = 2f64.powi(-(k as i32));
            let rep = residual(&build_solution(n, h, l).unwrap());
            assert_eq!(rep.support_violation, 0.0);
            assert!(
                rep.max_residual <= residual_tolerance(n, h),
                "order {n}, h=2^-{k}: residual {} above frozen tolerance {}",
                rep.max_residual,
                residual_tolerance(n, h)
            );
            residuals.push(rep.max_residual);
        }
        // Monotone decrease, at least first-order (measured: second-order).
        assert!(residuals[1] <= 0.6 * residuals[0], "{residuals:?}");
        assert!(residuals[2] <= 0.6 * residuals[1], "{residuals:?}");
    }
}

#[test]
fn order_two_residual_meets_the_coarse_bound() {
    // The headline figure: h = 2^-10 keeps the residual below 5e-3 with
    // orders of magnitude to spare.
    let h = 2f64.powi(-10);
    let rep = residual(&build_solution(2, h, half_width(2)).unwrap());
    assert!(rep.max_residual < 5e-3);
    assert!(rep.max_residual < 1e-6);
}

#[test]
fn discrete_mass_converges_to_the_exact_product() {
    for n in [2u32, 3] {
        let l = half_width(n);
        let coarse = (build_solution(n, 2f64.powi(-9), l).unwrap().integral()
            - expected_mass(n))
        .abs();
        let fine = (build_solution(n, 2f64.powi(-10), l).unwrap().integral()
            - expected_mass(n))
        .abs();
        assert!(
            coarse >= 1.5 * fine,
            "order {n}: mass error {coarse} -> {fine} improved by less than 1.5x"
        );
    }
}

#[test]
fn exact_check_covers_all_small_denominators() {
    // Every rational with denominator up to 64 in [-3, 3].
    let mut points = Vec::new();
    for den in 1..=64i64 {
        for num in -3 * den..=3 * den {
            points.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
    }
    assert!(exact_check_n1(&points));
}

#[test]
fn order_one_exactness_and_interpolated_residual() {
    // Power-of-two step: kinks on grid, dyadic arithmetic, residual is 0.0.
    let rep = residual(&build_solution(1, 2f64.powi(-8), 3.0).unwrap());
    assert_eq!(rep.max_residual, 0.0);
    // Integer-reciprocal step that is not a power of two: float rounding only.
    let rep = residual(&build_solution(1, 0.01, 3.0).unwrap());
    assert!(rep.max_residual <= residual_tolerance(1, 0.01));
}
