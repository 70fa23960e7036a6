//! Exact-identity suites run by `ndim identities` and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::Error;
use crate::ndim::{
    a_of_r_exact, generating_closed_form, i_star_ac_with, solve_constraints_forward,
    solve_constraints_inverse, GeneratingParams, IntegralSpec, SeriesIndex,
};
use crate::oracles::{integrate_numeric, QuadratureRequest, Transform};
use crate::ratio;
use crate::specfun::{gamma_exact, pochhammer, pochhammer_reflect, Branch, ExactValue, GammaArg};

const MAX_REPORTED_FAILURES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Pochhammer,
    GammaRecurrence,
    ConstraintRoundtrip,
    Continuation,
    GeneratingFunctional,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Pochhammer,
        Suite::GammaRecurrence,
        Suite::ConstraintRoundtrip,
        Suite::Continuation,
        Suite::GeneratingFunctional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pochhammer => "pochhammer",
            Suite::GammaRecurrence => "gamma-recurrence",
            Suite::ConstraintRoundtrip => "constraint-roundtrip",
            Suite::Continuation => "continuation",
            Suite::GeneratingFunctional => "generating-functional",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Largest `|q|` on the Pochhammer grid.
    pub max_q: i64,
    pub branch: Branch,
    /// Relative tolerance of the generating functional against quadrature.
    pub generating_rel_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_q: 20,
            branch: Branch::default(),
            generating_rel_tol: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: usize,
    pub failures: usize,
    /// First few failing cases.
    pub examples: Vec<String>,
    pub note: Option<String>,
}

impl SuiteOutcome {
    fn new(suite: Suite) -> Self {
        SuiteOutcome {
            suite,
            checks: 0,
            failures: 0,
            examples: Vec::new(),
            note: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_REPORTED_FAILURES {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> SuiteOutcome {
    match suite {
        Suite::Pochhammer => pochhammer_suite(config.max_q, config.branch).outcome,
        Suite::GammaRecurrence => gamma_recurrence_suite(),
        Suite::ConstraintRoundtrip => constraint_roundtrip_suite(50),
        Suite::Continuation => continuation_suite(config.branch),
        Suite::GeneratingFunctional => generating_suite(config.generating_rel_tol),
    }
}

pub fn run_all(config: &SuiteConfig) -> Vec<SuiteOutcome> {
    Suite::ALL
        .into_iter()
        .map(|s| run_suite(s, config))
        .collect()
}

/// Half-integer lattice `{lo, lo + 1/2, …, hi}` for integer bounds.
pub fn half_lattice(lo: i64, hi: i64) -> impl Iterator<Item = BigRational> {
    (2 * lo..=2 * hi).map(|n| ratio(n, 2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PochhammerGrid {
    pub outcome: SuiteOutcome,
    pub grid_points: usize,
    pub finite_points: usize,
    pub pole_points: usize,
}

impl PochhammerGrid {
    pub fn finite_fraction(&self) -> f64 {
        self.finite_points as f64 / self.grid_points as f64
    }
}

/// Reflection identity on `p ∈ {−10, −19/2, …, 10}`, integer `|q| ≤ max_q`.
///
/// Finite pairs must agree exactly. Pairs where either side is a pole must
/// agree on the classification (both poles, same order).
pub fn pochhammer_grid(max_q: i64, branch: Branch) -> PochhammerGrid {
    let mut outcome = SuiteOutcome::new(Suite::Pochhammer);
    let (mut grid_points, mut finite_points, mut pole_points) = (0, 0, 0);
    for p in half_lattice(-10, 10) {
        for q in -max_q..=max_q {
            let q = ratio(q, 1);
            grid_points += 1;
            let lhs = pochhammer(&p, &q);
            let rhs = pochhammer_reflect(&p, &q, branch);
            match (&lhs, &rhs) {
                (Ok(l), Ok(r)) if l.is_finite() && r.is_finite() => {
                    finite_points += 1;
                    outcome.check(l == r, || format!("(p={p}, q={q}): {l} != {r}"));
                }
                (Ok(l), Ok(r)) => {
                    pole_points += 1;
                    outcome.check(l == r, || {
                        format!("(p={p}, q={q}): pole mismatch {l} vs {r}")
                    });
                }
                _ => outcome.check(false, || format!("(p={p}, q={q}): {lhs:?} / {rhs:?}")),
            }
        }
    }
    outcome.note = Some(format!(
        "{finite_points}/{grid_points} finite, {pole_points} pole pairs"
    ));
    PochhammerGrid {
        outcome,
        grid_points,
        finite_points,
        pole_points,
    }
}

fn pochhammer_suite(max_q: i64, branch: Branch) -> PochhammerGrid {
    pochhammer_grid(max_q, branch)
}

/// `Γ(z+1) = zΓ(z)` for `z ∈ [−19/2, 19/2]` off the pole set.
pub fn gamma_recurrence_suite() -> SuiteOutcome {
    let mut outcome = SuiteOutcome::new(Suite::GammaRecurrence);
    for z in half_lattice(-10, 10).skip(1).take(39) {
        let arg = GammaArg::new(z.clone()).expect("lattice");
        if arg.is_pole() {
            continue;
        }
        let lhs = gamma_exact(
            &GammaArg::new(&z + BigRational::from_integer(BigInt::from(1))).expect("lattice"),
        );
        let rhs = gamma_exact(&arg).and_then(|g| g.scale(&z));
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        outcome.check(ok, || format!("z={z}: {lhs:?} vs {rhs:?}"));
    }
    outcome
}

pub fn constraint_roundtrip_suite(max_index: u32) -> SuiteOutcome {
    let mut outcome = SuiteOutcome::new(Suite::ConstraintRoundtrip);
    for k in 0..=max_index {
        for l in 0..=max_index {
            let idx = SeriesIndex { k, l };
            let (r, s) = solve_constraints_forward(idx);
            let back = solve_constraints_inverse(i64::from(r), &s);
            outcome.check(back.as_ref() == Ok(&idx), || {
                format!("{idx:?} -> ({r}, {s}) -> {back:?}")
            });
        }
    }
    outcome
}

/// Even `r ≤ 40`: continued value at `s = −1` equals `(π/a)(−a)ʳ` exactly for
/// `a ∈ {1/2, 1, 2}`. Odd `r ≤ 39`: the continued value is a pole.
pub fn continuation_suite(branch: Branch) -> SuiteOutcome {
    let mut outcome = SuiteOutcome::new(Suite::Continuation);
    let scales = [ratio(1, 2), ratio(1, 1), ratio(2, 1)];
    for r in 0..=40u32 {
        let spec = IntegralSpec::new(r, ratio(-1, 1)).expect("lattice");
        let continued = i_star_ac_with(&spec, branch);
        if r % 2 == 0 {
            for a in &scales {
                let bound = continued
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|v| v.bind(a));
                let target = a_of_r_exact(r, a);
                let ok = matches!((&bound, &target), (Ok(b), Ok(t)) if b == t);
                outcome.check(ok, || {
                    format!("r={r}, a={a}: {} vs {}", show(&bound), show(&target))
                });
            }
        } else {
            let ok = matches!(&continued, Ok(v) if v.is_pole());
            outcome.check(ok, || {
                let got = continued
                    .as_ref()
                    .map(|v| v.value.clone())
                    .map_err(Clone::clone);
                format!("r={r}: expected pole, got {}", show(&got))
            });
        }
    }
    outcome
}

fn show(v: &crate::Result<ExactValue>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// The `(α, β, a)` grid of the generating functional check.
pub fn generating_grid() -> Vec<GeneratingParams> {
    let mut grid = Vec::with_capacity(27);
    for alpha in [0.0, 1.0, 2.0] {
        for beta in [0.5, 1.0, 2.0] {
            for a in [0.0, 1.0, 2.0] {
                grid.push(GeneratingParams::new(alpha, beta, a).expect("beta > 0"));
            }
        }
    }
    grid
}

pub fn generating_suite(rel_tol: f64) -> SuiteOutcome {
    let mut outcome = SuiteOutcome::new(Suite::GeneratingFunctional);
    for params in generating_grid() {
        let closed = generating_closed_form(&params);
        let req = QuadratureRequest::new(params.integrand(), Transform::SinhSinh)
            .tolerances(1e-300, 1e-13);
        let numeric = integrate_numeric(&req);
        let ok =
            matches!((&closed, &numeric), (Ok(c), Ok(n)) if ((c - n.value) / c).abs() <= rel_tol);
        outcome.check(ok, || {
            format!("{params:?}: closed {closed:?} vs quadrature {numeric:?}")
        });
    }
    outcome
}

/// `(p)_q (p+q)_{−q} = 1` when both factors are finite and nonzero.
pub fn pochhammer_inverse_pair(p: &BigRational, q: i64) -> Option<bool> {
    let q = ratio(q, 1);
    let forward = pochhammer(p, &q).ok()?;
    let back = pochhammer(&(p + &q), &-&q).ok()?;
    if forward.is_pole() || back.is_pole() || forward.is_zero() || back.is_zero() {
        return None;
    }
    Some(forward.mul(&back).ok()? == ExactValue::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn default_suites_pass() {
        let config = SuiteConfig::default();
        for suite in [
            Suite::Pochhammer,
            Suite::GammaRecurrence,
            Suite::ConstraintRoundtrip,
            Suite::Continuation,
        ] {
            let outcome = run_suite(suite, &config);
            assert!(outcome.passed(), "{outcome:?}");
        }
    }

    #[test]
    fn flipped_branch_breaks_continuation() {
        let outcome = continuation_suite(Branch::default().flipped());
        assert!(!outcome.passed());
        // only the even-r checks fail; odd r is a pole on either branch
        assert_eq!(outcome.failures, 21 * 3);
    }

    #[test]
    fn small_grid_counts() {
        let grid = pochhammer_grid(1, Branch::default());
        assert_eq!(grid.grid_points, 41 * 3);
        // (p)_{-1} is a pole only at p = 1
        assert_eq!(grid.pole_points, 1);
    }
}
