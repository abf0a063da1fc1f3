//! Grid-refinement study behind the frozen residual tolerances.
//!
//! Run with `cargo run -p schilling-cascade --example study --release`.
//! The numbers quoted in `residual_tolerance` come from this sweep.

use schilling_cascade::{build_solution, expected_mass, residual, residual_tolerance};

fn main() {
    for n in [2u32, 3, 4] {
        let q = 2f64.powf(-1.0 / n as f64);
        let half_width = q / (1.0 - q) + 1.6;
        println!("order n = {n} (q = {q:.6}), half-width {half_width:.3}");
        let mut prev: Option<f64> = None;
        for k in [7u32, 8, 9, 10, 11, 12] {
            let h = 2f64.powi(-(k as i32));
            let f = build_solution(n, h, half_width).unwrap();
            let rep = residual(&f);
            let mass_err = (f.integral() - expected_mass(n)).abs();
            let ratio = prev
                .map(|p| format!("{:.3}", rep.max_residual / p))
                .unwrap_or_else(|| "-".to_string());
            println!(
                "  h = 2^-{k:<2}  residual {:.3e}  ratio {ratio:>6}  residual/h {:.2e}  \
                 tolerance {:.2e}  mass_err {:.2e}  support_viol {:.1e}",
                rep.max_residual,
                rep.max_residual / h,
                residual_tolerance(n, h),
                mass_err,
                rep.support_violation,
            );
            prev = Some(rep.max_residual);
        }
    }
}
