//! Acceptance suite: one test per shipping criterion, each printing a
//! `[PASS]` line when it holds. Run with
//! `cargo test -p schilling-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use schilling_cascade::{build_solution, exact_check_n1, residual, residual_tolerance};
use schilling_core::{FieldCase, FieldElement, LatticeWindow, Point, QuadField};
use schilling_engine::{emit, saturate, verify_theorem, Budget, Strategy};
use schilling_trace::{validate, ProofLog, StepKind};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_schilling")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env("SCHILLING_LOG_DIR", dir)
        .output()
        .expect("binary runs")
}

fn p(case: FieldCase, m: i64, n: i64) -> Point {
    Point::from_integers(case, m, n)
}

/// Criterion 1: window-10 certification exits 0 for every case, well inside
/// the one-minute-per-case budget, with a self-validating trace.
#[test]
fn criterion_1_theorem_reproduction_window_ten() {
    let dir = scratch("acc-criterion-1");
    for case in FieldCase::ALL {
        let started = Instant::now();
        let out = run_in(&dir, &["certify", "--case", case.cli_name(), "--window", "10"]);
        let elapsed = started.elapsed();
        assert_eq!(
            out.status.code(),
            Some(0),
            "case {case}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert!(
            elapsed.as_secs() < 60,
            "case {case} took {elapsed:?}, budget is 60 s"
        );
        let log_path = dir.join(format!("certify-{}-w10.slog.json", case.cli_name()));
        let log = ProofLog::read_file(&log_path).unwrap();
        assert_eq!(log.conclusions.len(), 21 * 21);
        assert!(validate(&log).ok());
    }
    println!("[PASS] criterion 1: all four cases certify window 10 with validating traces");
}

/// Criterion 2: the numbered zero facts of the derivation re-derive exactly
/// at window three, each with a concluding trace step.
#[test]
fn criterion_2_numbered_facts_at_window_three() {
    let budget = Budget::default();

    // Per case: the exact points that must be proven. The two sqrt3
    // induction instances beyond the window are requested explicitly.
    let f0 = |case| vec![p(case, 0, 0)];
    let checks: Vec<(FieldCase, Vec<Point>, Vec<Point>)> = vec![
        (
            FieldCase::Sqrt3Half,
            {
                let case = FieldCase::Sqrt3Half;
                let mut pts = f0(case);
                pts.extend([p(case, 1, -2), p(case, -1, 2)]); // n = 1 instance
                pts
            },
            {
                let case = FieldCase::Sqrt3Half;
                vec![p(case, 1, -4), p(case, -1, 4), p(case, 1, -6), p(case, -1, 6)]
            },
        ),
        (
            FieldCase::ThreeMinusSqrt5Half,
            {
                let case = FieldCase::ThreeMinusSqrt5Half;
                let mut pts = f0(case);
                pts.extend([p(case, 1, -1), p(case, -1, 1)]);
                pts
            },
            vec![],
        ),
        (
            FieldCase::Sqrt2Minus1,
            {
                let case = FieldCase::Sqrt2Minus1;
                let mut pts = f0(case);
                pts.extend([p(case, 0, 1), p(case, 0, -1)]);
                pts
            },
            vec![],
        ),
        (
            FieldCase::GoldenRatioConj,
            {
                let case = FieldCase::GoldenRatioConj;
                let mut pts = f0(case);
                pts.extend([
                    p(case, 1, 1),
                    p(case, -1, -1), // boundary pair
                    p(case, 1, 0),
                    p(case, -1, 0),
                    p(case, 0, 1),
                    p(case, 0, -1), // coupled-system zeros
                    p(case, 0, 2),
                    p(case, 0, -2),
                    p(case, 2, -1),
                    p(case, -2, 1), // second shell
                ]);
                pts
            },
            vec![],
        ),
    ];

    for (case, in_window, beyond_window) in checks {
        let field = QuadField::new(case);
        let mut targets: Vec<Point> = LatticeWindow::new(3)
            .points(&field)
            .into_iter()
            .map(|lp| lp.point)
            .collect();
        targets.extend(beyond_window.iter().cloned());
        let result = saturate(&field, &targets, &Strategy::Auto, budget);
        assert!(result.is_complete(), "case {case}: {:?}", result.unresolved);
        let log = emit(&result);
        assert!(validate(&log).ok(), "case {case}");
        for fact in in_window.iter().chain(beyond_window.iter()) {
            let step = result.proven.get(fact);
            assert!(step.is_some(), "case {case}: fact {fact} not proven");
            assert!(
                log.conclusions.iter().any(|(point, _)| point == fact),
                "case {case}: fact {fact} has no conclusion in the log"
            );
        }
    }
    println!("[PASS] criterion 2: every numbered zero fact re-derives exactly at window 3");
}

/// Criterion 3: with the candidate stream restricted to x in {0, ±1, ±1/q},
/// row elimination alone concludes the five coupled golden-case zeros.
#[test]
fn criterion_3_golden_coupled_system() {
    let case = FieldCase::GoldenRatioConj;
    let field = QuadField::new(case);
    let candidates = vec![
        p(case, 0, 0),
        p(case, 1, 0),
        p(case, -1, 0),
        p(case, 1, 1),  // 1/q = 1 + q
        p(case, -1, -1),
    ];
    let five = [
        p(case, 0, 0),
        p(case, 1, 0),
        p(case, -1, 0),
        p(case, 0, 1),
        p(case, 0, -1),
    ];
    let result = saturate(
        &field,
        &five,
        &Strategy::Explicit(candidates),
        Budget::default(),
    );
    assert!(result.is_complete(), "unresolved: {:?}", result.unresolved);

    // The conclusions must flow through eliminate_row steps: this system is
    // beyond unit propagation.
    let log = emit(&result);
    assert!(validate(&log).ok());
    for target in &five {
        let (_, step) = log
            .conclusions
            .iter()
            .find(|(point, _)| point == target)
            .expect("concluded");
        let mut stack = vec![*step];
        let mut saw_elimination = false;
        while let Some(id) = stack.pop() {
            match &log.step(id).unwrap().kind {
                StepKind::EliminateRow { sources, .. } => {
                    saw_elimination = true;
                    stack.extend(sources.iter().map(|(s, _)| *s));
                }
                StepKind::Reduce { source, removed } => {
                    stack.push(*source);
                    stack.extend(removed.iter().map(|(_, z)| *z));
                }
                StepKind::ConcludeZero { source, .. } => stack.push(*source),
                StepKind::SupportZero { .. } | StepKind::Instantiate { .. } => {}
            }
        }
        assert!(saw_elimination, "f({target}) did not route through elimination");
    }
    println!("[PASS] criterion 3: elimination settles the golden coupled system");
}

// ---- criterion 4: validator independence under mutation ----

/// Collect the JSON paths of mutable fields: rational strings inside
/// point/coefficient objects, and parent step references.
fn mutation_sites(value: &serde_json::Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match value {
        serde_json::Value::Object(map) => {
            let is_elem = map.contains_key("u")
                && map.contains_key("v")
                && map["u"].is_string()
                && map["v"].is_string();
            if is_elem {
                for key in ["u", "v"] {
                    path.push(key.to_string());
                    out.push(path.clone());
                    path.pop();
                }
            }
            for (key, child) in map {
                if matches!(key.as_str(), "source" | "zero" | "step") && child.is_u64() {
                    path.push(key.clone());
                    out.push(path.clone());
                    path.pop();
                }
                path.push(key.clone());
                mutation_sites(child, path, out);
                path.pop();
            }
        }
        serde_json::Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                path.push(i.to_string());
                mutation_sites(child, path, out);
                path.pop();
            }
        }
        _ => {}
    }
}

fn lookup_mut<'a>(
    value: &'a mut serde_json::Value,
    path: &[String],
) -> &'a mut serde_json::Value {
    let mut cur = value;
    for key in path {
        cur = match cur {
            serde_json::Value::Object(map) => map.get_mut(key).unwrap(),
            serde_json::Value::Array(items) => &mut items[key.parse::<usize>().unwrap()],
            _ => unreachable!(),
        };
    }
    cur
}

/// Shift a `"p/r"` rational by exactly one: `p -> p + r`.
fn bump_rational(text: &str) -> String {
    let (num, den) = text.split_once('/').unwrap();
    let p: i128 = num.parse().unwrap();
    let r: i128 = den.parse().unwrap();
    format!("{}/{}", p + r, r)
}

#[test]
fn criterion_4_validator_rejects_all_single_field_mutations() {
    // Unmutated logs for every case, windows up to five, must all validate.
    let mut golden_log_text = String::new();
    for case in FieldCase::ALL {
        let field = QuadField::new(case);
        for window in 0..=5u32 {
            let result = verify_theorem(&field, window, Budget::default());
            assert!(result.is_complete());
            let log = emit(&result);
            assert!(validate(&log).ok(), "case {case} window {window}");
            if case == FieldCase::GoldenRatioConj && window == 3 {
                golden_log_text = log.to_json_string();
            }
        }
    }

    // The engine never records two relation steps with identical term maps;
    // this is what makes reference mutations semantically visible.
    let log = ProofLog::from_json_str(&golden_log_text).unwrap();
    {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for step in &log.steps {
            let terms: Option<String> = match &step.kind {
                StepKind::Instantiate { kept, .. } => Some(format!("{kept:?}")),
                StepKind::EliminateRow { result, .. } => Some(format!("{result:?}")),
                _ => None,
            };
            if let Some(t) = terms {
                assert!(seen.insert(t), "duplicate relation content at step {}", step.id);
            }
        }
    }

    let base: serde_json::Value = serde_json::from_str(&golden_log_text).unwrap();
    let mut sites = Vec::new();
    mutation_sites(&base, &mut Vec::new(), &mut sites);
    // Keep only sites inside steps/conclusions: coefficient and point
    // rationals, and parent references.
    let sites: Vec<Vec<String>> = sites
        .into_iter()
        .filter(|path| matches!(path[0].as_str(), "steps" | "conclusions"))
        .collect();
    assert!(sites.len() > 100, "log too small for the mutation study");

    let mut rng = StdRng::seed_from_u64(0x5c411);
    for trial in 0..100 {
        let site = &sites[rng.random_range(0..sites.len())];
        let mut mutated = base.clone();
        let slot = lookup_mut(&mut mutated, site);
        match slot {
            serde_json::Value::String(text) => {
                *slot = serde_json::Value::String(bump_rational(text));
            }
            serde_json::Value::Number(n) => {
                let bumped = n.as_u64().unwrap() + 1;
                *slot = serde_json::Value::Number(bumped.into());
            }
            other => panic!("unexpected mutation target {other:?}"),
        }
        let text = serde_json::to_string(&mutated).unwrap();
        let rejected = match ProofLog::from_json_str(&text) {
            Err(_) => true,
            Ok(log) => !validate(&log).ok(),
        };
        assert!(rejected, "trial {trial}: mutation at {site:?} was accepted");
    }
    println!("[PASS] criterion 4: 100/100 mutations rejected; all clean logs accepted");
}

// ---- criterion 5: randomized field arithmetic, with an independent
// interval oracle for signs ----

/// Rational interval containing sqrt(d), width below 10^-digits, by Newton
/// iteration from above. Test-only; shares nothing with the field code.
fn sqrt_interval(d: i64, digits: u32) -> (BigRational, BigRational) {
    let d_rat = BigRational::from_integer(BigInt::from(d));
    let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut hi = BigRational::from_integer(BigInt::from((d as f64).sqrt() as i64 + 1));
    loop {
        let lo = &d_rat / &hi;
        if &hi - &lo < eps {
            return (lo, hi);
        }
        hi = (&hi + &d_rat / &hi) / &two;
    }
}

fn interval_sign(e: &FieldElement, sqrt_d: &(BigRational, BigRational)) -> Option<i32> {
    let rf = e.case().root_form();
    let a = BigRational::from_integer(BigInt::from(rf.a));
    let b = BigRational::from_integer(BigInt::from(rf.b));
    let c = BigRational::from_integer(BigInt::from(rf.c));
    let (s_lo, s_hi) = sqrt_d;
    let (q_lo, q_hi) = if b.is_negative() {
        ((&a + &b * s_hi) / &c, (&a + &b * s_lo) / &c)
    } else {
        ((&a + &b * s_lo) / &c, (&a + &b * s_hi) / &c)
    };
    let (t_lo, t_hi) = if e.v().is_negative() {
        (e.v() * &q_hi, e.v() * &q_lo)
    } else {
        (e.v() * &q_lo, e.v() * &q_hi)
    };
    let (lo, hi) = (e.u() + t_lo, e.u() + t_hi);
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else {
        None
    }
}

#[test]
fn criterion_5_field_arithmetic_randomized_suite() {
    let per_case_rounds = 1500; // 7 exact checks each: >10^4 checks per case
    for case in FieldCase::ALL {
        let field = QuadField::new(case);
        assert!(field.minpoly_applied().is_zero());
        let sqrt_d = sqrt_interval(case.root_form().d, 60);
        let mut rng = StdRng::seed_from_u64(0xf1e1d + case as u64);
        let rand_elem = |rng: &mut StdRng| {
            let r = |rng: &mut StdRng| {
                BigRational::new(
                    BigInt::from(rng.random_range(-200i64..=200)),
                    BigInt::from(rng.random_range(1i64..=40)),
                )
            };
            FieldElement::new(case, r(rng), r(rng))
        };
        let mut checks: u64 = 0;
        for _ in 0..per_case_rounds {
            let x = rand_elem(&mut rng);
            let y = rand_elem(&mut rng);
            let z = rand_elem(&mut rng);

            assert_eq!((&x + &y) + &z, &x + (&y + &z));
            assert_eq!(&x + &y, &y + &x);
            assert_eq!((&x * &y) * &z, &x * (&y * &z));
            assert_eq!(&x * &y, &y * &x);
            assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            if !x.is_zero() {
                let inv = x.inv().unwrap();
                assert!((&x * &inv).is_one());
            }
            match interval_sign(&x, &sqrt_d) {
                Some(sign) => assert_eq!(x.signum(), sign),
                // Interval width ~1e-56: only the exact zero straddles it
                // at these coordinate sizes.
                None => assert!(x.is_zero()),
            }
            checks += 7;
        }
        assert!(checks >= 10_000, "case {case}: only {checks} checks");
    }
    println!("[PASS] criterion 5: >= 10^4 exact randomized field checks per case");
}

/// Criterion 6: the order-one solution satisfies the equation exactly on all
/// rationals with denominator <= 64 in [-3, 3]; grid residual exactly zero.
#[test]
fn criterion_6_known_solution_order_one() {
    let mut points = Vec::new();
    for den in 1..=64i64 {
        for num in -3 * den..=3 * den {
            points.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
    }
    assert!(exact_check_n1(&points));

    let f = build_solution(1, 2f64.powi(-10), 3.0).unwrap();
    let report = residual(&f);
    assert_eq!(report.max_residual, 0.0);
    assert_eq!(report.support_violation, 0.0);
    println!(
        "[PASS] criterion 6: exact at {} rationals (den <= 64), grid residual exactly 0",
        points.len()
    );
}

/// Criterion 7: orders two and three stay below the frozen tolerance and
/// halving the step at least multiplies the residual by 0.6.
#[test]
fn criterion_7_known_solutions_orders_two_three() {
    let started = Instant::now();
    for n in [2u32, 3] {
        let q = 2f64.powf(-1.0 / n as f64);
        let half_width = q / (1.0 - q) + 1.6;
        let h = 2f64.powi(-10);
        let coarse = residual(&build_solution(n, h, half_width).unwrap());
        let fine = residual(&build_solution(n, h / 2.0, half_width).unwrap());
        assert!(
            coarse.max_residual <= residual_tolerance(n, h),
            "order {n}: {} > {}",
            coarse.max_residual,
            residual_tolerance(n, h)
        );
        assert!(
            fine.max_residual <= 0.6 * coarse.max_residual,
            "order {n}: ratio {}",
            fine.max_residual / coarse.max_residual
        );
        assert_eq!(coarse.support_violation, 0.0);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget is 30 s");
    println!("[PASS] criterion 7: orders 2 and 3 within frozen tolerances, first-order or better");
}

/// Criterion 8: identical certify invocations produce byte-identical logs.
#[test]
fn criterion_8_certification_is_deterministic() {
    let dir = scratch("acc-criterion-8");
    let a = dir.join("first.slog.json");
    let b = dir.join("second.slog.json");
    for path in [&a, &b] {
        let out = run_in(
            &dir,
            &[
                "certify", "--case", "golden", "--window", "4", "--out",
                path.to_str().unwrap(),
            ],
        );
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());
    println!("[PASS] criterion 8: byte-identical logs across runs");
}
