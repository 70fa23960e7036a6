//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p ndim-core --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use ndim_core::identities::{continuation_suite, generating_grid, pochhammer_grid};
use ndim_core::ndim::{
    a_of_r, a_of_r_exact, generating_closed_form, generating_series_coefficient, i_pol, i_star,
    i_star_ac, solve_constraints_forward,
};
use ndim_core::oracles::{
    builtin_corpus, integrate_by_residues, integrate_cos_projection, integrate_numeric,
    DEFAULT_BUDGET,
};
use ndim_core::report::{run_corpus, CorpusTolerance, Tolerances};
use ndim_core::resum::{closed_form, resum_exp_series};
use ndim_core::{
    ratio, Branch, ExactValue, IntegralSpec, QuadratureRequest, RationalIntegrand, SeriesIndex,
    Transform,
};

const SCALES: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
const SERIES_REL_TOL: f64 = 1e-12;
const ORACLE_REL_TOL: f64 = 1e-9;
const RUNTIME_LIMIT: Duration = Duration::from_secs(1);
const FOURIER_ABS_TOL: f64 = 1e-9;
const GENERATING_REL_TOL: f64 = 1e-10;
const TERM_MATCH_MAX_INDEX: u32 = 12;
const MIN_FINITE_FRACTION: f64 = 0.95;
const MIN_CORPUS_ENTRIES: usize = 10;

fn report(id: &str, title: &str, ok: bool, detail: impl AsRef<str>) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id} [{title}]: {verdict} ({})", detail.as_ref());
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs())
}

#[test]
fn criterion_1_resummation_matches_oracles() {
    let start = Instant::now();
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    let mut problems = Vec::new();
    for a in SCALES {
        let target = closed_form(a);
        let (series, diag) = resum_exp_series(a, 1e-16, 400).expect("series converges");
        let lorentz = RationalIntegrand::lorentzian(a, 1.0).expect("valid");
        let residue = integrate_by_residues(&lorentz).expect("residues").re;
        let quad = integrate_cos_projection(&lorentz, 1e-14, 1e-12, DEFAULT_BUDGET)
            .expect("quadrature")
            .value;
        let (e_series, e_res, e_quad) =
            (rel(series, target), rel(series, residue), rel(series, quad));
        worst = (
            worst.0.max(e_series),
            worst.1.max(e_res),
            worst.2.max(e_quad),
        );
        if !diag.converged
            || e_series > SERIES_REL_TOL
            || e_res > ORACLE_REL_TOL
            || e_quad > ORACLE_REL_TOL
        {
            problems.push(format!(
                "a={a}: series {e_series:.1e}, residue {e_res:.1e}, quad {e_quad:.1e}"
            ));
        }
    }
    let elapsed = start.elapsed();
    let ok = problems.is_empty() && elapsed < RUNTIME_LIMIT;
    report(
        "1",
        "resummation vs closed form, residues, quadrature",
        ok,
        format!(
            "max rel: closed {:.1e}, residue {:.1e}, quad {:.1e}; {:.0} ms",
            worst.0,
            worst.1,
            worst.2,
            elapsed.as_secs_f64() * 1e3
        ),
    );
    assert!(problems.is_empty(), "{problems:?}");
    assert!(elapsed < RUNTIME_LIMIT, "took {elapsed:?}");
}

#[test]
fn criterion_2_fourier_quadrature() {
    let req = QuadratureRequest::new(
        |x: f64| x.cos() / (x * x + 1.0),
        Transform::OscillatoryPanels { omega: 1.0 },
    )
    .tolerances(1e-13, 1e-13)
    .budget(DEFAULT_BUDGET);
    let result = integrate_numeric(&req).expect("quadrature converges");
    let err = (result.value - PI / std::f64::consts::E).abs();
    let ok = err <= FOURIER_ABS_TOL && result.evaluations <= DEFAULT_BUDGET;
    report(
        "2",
        "quadrature of cos x/(x²+1)",
        ok,
        format!("abs error {err:.1e}, {} evaluations", result.evaluations),
    );
    assert!(ok);
}

#[test]
fn criterion_3_generating_functional() {
    let grid = generating_grid();
    let mut worst = 0.0f64;
    for params in &grid {
        let closed = generating_closed_form(params).expect("beta > 0");
        let req = QuadratureRequest::new(params.integrand(), Transform::SinhSinh)
            .tolerances(1e-300, 1e-13);
        let numeric = integrate_numeric(&req).expect("quadrature converges").value;
        worst = worst.max(rel(closed, numeric));
    }
    let ok = grid.len() == 27 && worst <= GENERATING_REL_TOL;
    report(
        "3",
        "generating functional vs quadrature",
        ok,
        format!("{} points, max rel {worst:.1e}", grid.len()),
    );
    assert!(ok);
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Γ(n + 1/2)` for any integer `n`, from the double-factorial formulas.
fn gamma_half_integer(n: i64) -> ExactValue {
    let m = n.unsigned_abs() as u32;
    let magnitude = BigRational::new(factorial(2 * m), BigInt::from(4).pow(m) * factorial(m));
    let coeff = if n >= 0 {
        magnitude
    } else {
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        big(sign) / magnitude
    };
    ExactValue::new(coeff, 1, 0)
}

/// `e^{iπn/2}` on the principal branch.
fn principal_i_pow(n: i64) -> ExactValue {
    let sign = if n.rem_euclid(4) >= 2 { -1 } else { 1 };
    ExactValue::new(big(sign), 0, n.rem_euclid(2))
}

#[test]
fn criterion_4_term_matching() {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for k in 0..=TERM_MATCH_MAX_INDEX {
        for l in 0..=TERM_MATCH_MAX_INDEX {
            let idx = SeriesIndex { k, l };
            let (r, s) = solve_constraints_forward(idx);
            let twice_s = 2 * i64::from(k) - 2 * i64::from(l) - 1;
            assert_eq!(s, ratio(twice_s, 2));
            let moment = i_star(&IntegralSpec::new(r, s).expect("lattice")).expect("finite");
            // coefficient of αʳβˢ in ∫ Σ (−αx)ʳ/r! (−β(x²+a²))ˢ/Γ(s+1)
            let sign_r = if r.is_multiple_of(2) { 1 } else { -1 };
            let denominator = gamma_half_integer(i64::from(k) - i64::from(l))
                .scale(&BigRational::from_integer(factorial(r)))
                .expect("finite");
            let lhs = principal_i_pow(twice_s)
                .scale(&big(sign_r))
                .and_then(|p| p.mul(&moment.value))
                .and_then(|v| v.div(&denominator));
            let direct = ExactValue::new(
                BigRational::new(
                    BigInt::from(if k % 2 == 0 { 1 } else { -1 }),
                    BigInt::from(4).pow(l) * factorial(k) * factorial(l),
                ),
                1,
                0,
            );
            let term = generating_series_coefficient(idx);
            checked += 1;
            let ok = matches!(&lhs, Ok(v) if *v == term.coeff && *v == direct)
                && moment.a_power == i64::from(term.a_power)
                && term.a_power == 2 * k
                && term.alpha_power == r;
            if !ok {
                mismatches.push(format!("(k={k}, l={l}): {lhs:?} vs {}", term.coeff));
            }
        }
    }
    report(
        "4",
        "term matching of the two generating-functional expansions",
        mismatches.is_empty(),
        format!("{checked} index pairs, {} mismatches", mismatches.len()),
    );
    assert!(
        mismatches.is_empty(),
        "{:?}",
        &mismatches[..mismatches.len().min(5)]
    );
}

#[test]
fn criterion_5_continued_moments() {
    let scales = [ratio(1, 2), ratio(1, 1), ratio(2, 1)];
    let mut failures = Vec::new();
    let mut checks = 0;
    for r in 0..=40u32 {
        let continued =
            i_star_ac(&IntegralSpec::new(r, ratio(-1, 1)).expect("lattice")).expect("defined");
        if r % 2 == 0 {
            for a in &scales {
                checks += 1;
                let bound = continued.bind(a).expect("finite");
                // (π/a)(−a)ʳ computed from scratch
                let expected = ExactValue::new(num_traits::pow::Pow::pow(-a.clone(), r) / a, 2, 0);
                if bound != expected || a_of_r_exact(r, a).ok() != Some(expected.clone()) {
                    failures.push(format!("r={r}, a={a}: {bound}"));
                }
            }
        } else {
            checks += 1;
            let a = 1.5;
            let fallback = PI / a * (-a).powi(r as i32);
            if !continued.is_pole() || (a_of_r(r, a) - fallback).abs() > 1e-15 * fallback.abs() {
                failures.push(format!("r={r}: {}", continued.value));
            }
        }
    }
    report(
        "5",
        "continued moments at s = −1",
        failures.is_empty(),
        format!("{checks} checks, {} failures", failures.len()),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_6a_pochhammer_reflection_exact() {
    let grid = pochhammer_grid(20, Branch::default());
    let ok = grid.outcome.failures == 0;
    report(
        "6a",
        "Pochhammer reflection, exact equality where finite",
        ok,
        format!(
            "{} finite pairs, {} failures",
            grid.finite_points, grid.outcome.failures
        ),
    );
    assert!(ok, "{:?}", grid.outcome.examples);
}

#[test]
fn criterion_6b_pochhammer_grid_coverage() {
    let grid = pochhammer_grid(20, Branch::default());
    let fraction = grid.finite_fraction();
    let ok = fraction >= MIN_FINITE_FRACTION;
    report(
        "6b",
        "Pochhammer grid finite-testable fraction",
        ok,
        format!(
            "{}/{} = {:.4}, need {MIN_FINITE_FRACTION}; {} points have a pole on some side",
            grid.finite_points, grid.grid_points, fraction, grid.pole_points
        ),
    );
    assert!(
        ok,
        "finite fraction {fraction:.4} below {MIN_FINITE_FRACTION}"
    );
}

#[test]
fn criterion_7_polynomial_integrals_vanish() {
    let mut failures = Vec::new();
    for n in 0..=20 {
        for continued in [false, true] {
            let v = i_pol(n, continued).expect("n ≥ 0");
            if !v.value.is_zero() {
                failures.push(format!("n={n}, continued={continued}: {}", v.value));
            }
        }
    }
    let ok = failures.is_empty() && i_pol(-1, true).is_err();
    report(
        "7",
        "∫(x²)ⁿ dx vanishes in both dimensions",
        ok,
        format!("42 cases, {} nonzero", failures.len()),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_8_corpus() {
    let corpus = builtin_corpus();
    let max_multiplicity = corpus
        .iter()
        .flat_map(|e| e.record.roots.iter().map(|r| r.2))
        .max()
        .unwrap_or(0);
    let omegas: BTreeSet<u64> = corpus.iter().map(|e| e.record.omega as u64).collect();
    let coverage = corpus.len() >= MIN_CORPUS_ENTRIES
        && max_multiplicity >= 3
        && omegas.is_superset(&[0, 1, 2].into());
    let outcomes = run_corpus(
        &corpus,
        CorpusTolerance {
            abs: 1e-9,
            rel: 1e-8,
        },
        &Tolerances::default(),
    );
    let failed: Vec<_> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.name.as_str())
        .collect();
    let ok = coverage && failed.is_empty();
    report(
        "8",
        "residues vs quadrature on the corpus",
        ok,
        format!(
            "{} entries, multiplicity ≤ {max_multiplicity}, ω ∈ {omegas:?}, {} failed",
            corpus.len(),
            failed.len()
        ),
    );
    assert!(coverage);
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn criterion_9_flipped_branch_is_detected() {
    let default = continuation_suite(Branch::default());
    let flipped = continuation_suite(Branch::default().flipped());
    let ok = default.passed() && !flipped.passed();
    report(
        "9",
        "flipping the reflection branch breaks the continued moments",
        ok,
        format!(
            "{} default failures, {} flipped failures of {}",
            default.failures, flipped.failures, flipped.checks
        ),
    );
    assert!(ok);
}
