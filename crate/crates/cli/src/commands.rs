use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use schilling_cascade::{
    build_solution, exact_check_n1, residual, residual_tolerance, write_csv,
};
use schilling_core::{FieldCase, FieldElement, Point, QuadField};
use schilling_engine::{
    emit, saturate, verify_theorem_with, Budget, ProofResult, Strategy,
};
use schilling_trace::{render_human, validate, ProofLog};

use crate::{
    CertifyArgs, DeriveArgs, IdentitiesArgs, SolutionArgs, ValidateArgs, EXIT_INVALID, EXIT_OK,
    EXIT_UNRESOLVED, EXIT_USAGE,
};

fn log_dir() -> PathBuf {
    std::env::var_os("SCHILLING_LOG_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Write via a sibling temp file and rename, so interrupted runs never leave
/// a truncated file at the target path.
fn atomic_write(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".{}.tmp", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

fn parse_strategy(name: &str, window: u32) -> Option<Strategy> {
    match name {
        "auto" => Some(Strategy::Auto),
        "guided" => Some(Strategy::Guided),
        "grid" => Some(Strategy::Grid {
            denominator_bound: 4,
            magnitude_bound: 2 * window as i64 + 2,
        }),
        _ => None,
    }
}

struct CaseOutcome {
    code: i32,
    lines: Vec<String>,
}

fn certify_case(
    case: FieldCase,
    window: u32,
    strategy: &Strategy,
    budget: Budget,
    out: Option<PathBuf>,
) -> CaseOutcome {
    let field = QuadField::new(case);
    let result = verify_theorem_with(&field, window, strategy, budget);
    let log = emit(&result);
    let report = validate(&log);

    let path = out.unwrap_or_else(|| {
        log_dir().join(format!("certify-{}-w{}.slog.json", case.cli_name(), window))
    });
    let mut lines = Vec::new();
    if let Err(err) = atomic_write(&path, &log.to_json_string()) {
        lines.push(format!("case {case}: cannot write {}: {err}", path.display()));
        return CaseOutcome {
            code: EXIT_USAGE,
            lines,
        };
    }

    let proven_targets = result
        .targets
        .iter()
        .filter(|t| result.proven.contains_key(*t))
        .count();
    lines.push(format!(
        "case {case}: proven {}/{} window points, {} unresolved, {} steps, \
         {} substitutions, validation {}, wrote {}",
        proven_targets,
        result.targets.len(),
        result.unresolved.len(),
        log.steps.len(),
        result.stats.substitutions,
        if report.ok() { "ok" } else { "FAILED" },
        path.display()
    ));

    let code = if !report.ok() {
        for failure in report.failures().take(5) {
            lines.push(format!(
                "  step {} failed: {}",
                failure.id,
                failure.detail.as_deref().unwrap_or("unknown")
            ));
        }
        EXIT_INVALID
    } else if !result.is_complete() {
        EXIT_UNRESOLVED
    } else {
        EXIT_OK
    };
    CaseOutcome { code, lines }
}

pub fn certify(args: CertifyArgs) -> i32 {
    let Some(strategy) = parse_strategy(&args.strategy, args.window) else {
        eprintln!("unknown strategy {:?}: expected auto, guided or grid", args.strategy);
        return EXIT_USAGE;
    };
    let budget = Budget {
        max_substitutions: args.max_subs,
        max_relations: args.max_rels,
        ..Budget::default()
    };

    let outcomes: Vec<CaseOutcome> = if args.all {
        std::thread::scope(|scope| {
            let handles: Vec<_> = FieldCase::ALL
                .iter()
                .map(|&case| {
                    let strategy = strategy.clone();
                    scope.spawn(move || certify_case(case, args.window, &strategy, budget, None))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("no panics")).collect()
        })
    } else {
        let case = args.case.expect("clap enforces case XOR all");
        vec![certify_case(case, args.window, &strategy, budget, args.out)]
    };

    let mut code = EXIT_OK;
    for outcome in outcomes {
        for line in &outcome.lines {
            println!("{line}");
        }
        code = code.max(outcome.code);
    }
    code
}

pub fn derive(args: DeriveArgs) -> i32 {
    let element = match FieldElement::parse(args.case, &args.point) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("{err}");
            return EXIT_USAGE;
        }
    };
    let field = QuadField::new(args.case);
    let target = Point::new(element);
    let budget = Budget {
        max_substitutions: args.max_subs,
        max_relations: args.max_rels,
        ..Budget::default()
    };
    let result: ProofResult = saturate(&field, std::slice::from_ref(&target), &Strategy::Auto, budget);
    print!("{}", render_human(&emit(&result)));
    if result.is_complete() {
        EXIT_OK
    } else {
        println!("unresolved: f({target}) was not settled within the budget");
        EXIT_UNRESOLVED
    }
}

/// Accepts "p/q", an integer, or a decimal like "0.001"; exact in all cases.
fn parse_step(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: String = format!("{int_part}{frac_part}");
        let numer: BigInt = digits.parse().ok()?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Some(BigRational::new(numer, denom))
    } else {
        schilling_core::render::parse_ratio(text)
    }
}

pub fn solution(args: SolutionArgs) -> i32 {
    if args.n == 0 {
        eprintln!("the solution order n must be at least 1");
        return EXIT_USAGE;
    }
    let Some(h_exact) = parse_step(&args.h) else {
        eprintln!("cannot parse step {:?}", args.h);
        return EXIT_USAGE;
    };
    if !h_exact.is_positive() {
        eprintln!("the grid step must be positive");
        return EXIT_USAGE;
    }
    let h = h_exact.to_f64().unwrap_or(0.0);
    let q = 2f64.powf(-1.0 / args.n as f64);
    let support_bound = q / (1.0 - q);
    let half_width = args.half_width.unwrap_or(support_bound + 1.6);

    let f = match build_solution(args.n, h, half_width) {
        Ok(f) => f,
        Err(err) => {
            eprintln!("{err}");
            return EXIT_USAGE;
        }
    };

    let path = args
        .out
        .unwrap_or_else(|| log_dir().join(format!("solution-n{}.csv", args.n)));
    let mut csv = Vec::new();
    write_csv(&f, &mut csv).expect("in-memory write");
    if let Err(err) = atomic_write(&path, &String::from_utf8(csv).expect("csv is utf-8")) {
        eprintln!("cannot write {}: {err}", path.display());
        return EXIT_USAGE;
    }

    let report = residual(&f);
    let tolerance = residual_tolerance(args.n, h);
    println!(
        "order n = {}  q = {q:.12}  support bound Q = {support_bound:.12}",
        args.n
    );
    println!(
        "grid: step {h:.3e}, {} samples on [-{:.3}, {:.3}], wrote {}",
        f.len(),
        f.half_width(),
        f.half_width(),
        path.display()
    );
    println!(
        "max residual {:.6e} over {} points (tolerance {:.3e}); support violation {:.1e}",
        report.max_residual, report.checked_points, tolerance, report.support_violation
    );

    let mut ok = report.max_residual <= tolerance && report.support_violation == 0.0;
    if args.n == 1 {
        // The order-one solution is exactly piecewise linear with rational
        // breakpoints: check the equation in exact arithmetic on the grid.
        let steps = (BigRational::from_float(half_width).unwrap() / &h_exact)
            .ceil()
            .to_integer();
        let count = steps.to_i64().unwrap_or(0);
        let points: Vec<BigRational> = (-count..=count)
            .map(|k| BigRational::from_integer(BigInt::from(k)) * &h_exact)
            .collect();
        let exact_ok = exact_check_n1(&points);
        println!(
            "exact check at {} rational grid points: {}",
            points.len(),
            if exact_ok {
                "equation holds exactly (residual 0)"
            } else {
                "FAILED"
            }
        );
        ok = ok && exact_ok;
    }

    if ok {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

pub fn identities(args: IdentitiesArgs) -> i32 {
    let case = args.case;
    let field = QuadField::new(case);
    let (a, b, c) = case.minpoly();

    // Closed forms: Q = (u + v q)/den and 1/q = m + n q per case.
    let (q_closed, inv_closed): ((i64, i64, i64), (i64, i64)) = match case {
        FieldCase::Sqrt3Half => ((1, 2, 3), (2, 2)),
        FieldCase::ThreeMinusSqrt5Half => ((1, -1, 1), (3, -1)),
        FieldCase::Sqrt2Minus1 => ((1, 1, 2), (2, 1)),
        FieldCase::GoldenRatioConj => ((1, 1, 1), (1, 1)),
    };

    println!("case {case}: q = {}", case.describe());
    let mut all_ok = true;
    let mut check = |label: String, ok: bool| {
        println!("  {label} .. {}", if ok { "ok" } else { "FAILED" });
        all_ok &= ok;
    };

    check(
        format!("minimal polynomial {a} q^2 + ({b}) q + ({c}) = 0 at q"),
        field.minpoly_applied().is_zero(),
    );

    let (qu, qv, qden) = q_closed;
    let expected_bound = field
        .from_integers(qu, qv)
        .scale(&BigRational::new(BigInt::from(1), BigInt::from(qden)));
    check(
        format!("Q = q/(1-q) = ({qu} + {qv} q)/{qden}"),
        *field.support_bound() == expected_bound,
    );

    let (im, iv) = inv_closed;
    check(
        format!("1/q = {im} + {iv} q (integer coordinates)"),
        *field.inv_q() == field.from_integers(im, iv),
    );

    let half = FieldElement::new(
        case,
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigRational::zero(),
    );
    let cmp = (field.q() - &half).signum();
    println!(
        "  q {} 1/2",
        match cmp {
            1 => ">",
            -1 => "<",
            _ => "=",
        }
    );
    // A root equal to 1/2 would break the very first derivation; the catalog
    // never contains one.
    all_ok &= cmp != 0;

    if all_ok {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

pub fn validate_file(args: ValidateArgs) -> i32 {
    let text = match fs::read_to_string(&args.file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("cannot read {}: {err}", args.file.display());
            return EXIT_USAGE;
        }
    };
    let log = match ProofLog::from_json_str(&text) {
        Ok(log) => log,
        Err(err) => {
            println!("malformed log: {err}");
            return EXIT_INVALID;
        }
    };
    let report = validate(&log);
    println!("{}", report.summary());
    for failure in report.failures().take(10) {
        println!(
            "  step {} failed: {}",
            failure.id,
            failure.detail.as_deref().unwrap_or("unknown")
        );
    }
    for err in report.structure_errors.iter().take(10) {
        println!("  structure: {err}");
    }
    if report.ok() {
        println!(
            "validation ok: {} steps, {} conclusions (case {})",
            log.steps.len(),
            log.conclusions.len(),
            log.header.case
        );
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}
