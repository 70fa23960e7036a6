//! Resummation of `∫ e^{ix} / (x² + a²) dx` from continued moments.
//!
//! Expanding the exponential turns the integral into `Σ_m (i^m/m!) ∫ x^m/(x²+a²)`.
//! Each moment takes its continued value `(π/a)(−a)^m`, so the series is
//! `Σ_m (π/a)(−a)^m / m!`, whose sum is `(π/a) e^{−a}`.
//!
//! Terms and partial sums are kept as exact rational multiples of `π`; only
//! the reported values are rounded.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ndim::a_of_r_exact;
use crate::specfun::ExactValue;

/// Number of trailing partial sums kept in the diagnostics.
pub const TAIL_WINDOW: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesDiagnostics {
    pub terms_used: usize,
    pub last_term_magnitude: f64,
    /// The last few partial sums, oldest first.
    pub partial_sums: Vec<f64>,
    pub converged: bool,
    pub closed_form_target: Option<f64>,
}

/// `(π/a) e^{−a}`.
pub fn closed_form(a: f64) -> f64 {
    PI / a * (-a).exp()
}

fn exact_a(a: f64) -> Result<BigRational> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "a must be positive and finite, got {a}"
        )));
    }
    BigRational::from_float(a)
        .ok_or_else(|| Error::InvalidSpec(format!("cannot represent a = {a}")))
}

/// Coefficient of `π` in term `m`, i.e. `(−a)^m / (a · m!)`.
struct TermIter {
    a: BigRational,
    m: u32,
    factorial: BigInt,
}

impl TermIter {
    fn new(a: BigRational) -> Self {
        TermIter {
            a,
            m: 0,
            factorial: BigInt::from(1),
        }
    }
}

impl Iterator for TermIter {
    type Item = Result<BigRational>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.m > 0 {
            self.factorial *= BigInt::from(self.m);
        }
        let term = a_of_r_exact(self.m, &self.a).map(|v| {
            let coeff = v.coeff().cloned().unwrap_or_else(BigRational::zero);
            coeff / &self.factorial
        });
        self.m += 1;
        Some(term)
    }
}

fn pi_times(coeff: &BigRational) -> f64 {
    coeff.to_f64().unwrap_or(f64::NAN) * PI
}

/// Sums the series until two consecutive terms fall below
/// `stop_tolerance · max(1, |partial|)`.
pub fn resum_exp_series(
    a: f64,
    stop_tolerance: f64,
    max_terms: usize,
) -> Result<(f64, SeriesDiagnostics)> {
    if max_terms == 0 {
        return Err(Error::Config("max_terms must be at least 1".into()));
    }
    if stop_tolerance.is_nan() || stop_tolerance <= 0.0 {
        return Err(Error::Config(format!(
            "stop tolerance must be positive, got {stop_tolerance}"
        )));
    }
    let mut partial = BigRational::zero();
    let mut tail = Vec::with_capacity(TAIL_WINDOW + 1);
    let mut small_run = 0;
    let mut last = f64::INFINITY;
    for (used, term) in TermIter::new(exact_a(a)?).take(max_terms).enumerate() {
        let term = term?;
        partial += &term;
        let value = pi_times(&partial);
        last = pi_times(&term).abs();
        tail.push(value);
        if tail.len() > TAIL_WINDOW {
            tail.remove(0);
        }
        small_run = if last <= stop_tolerance * value.abs().max(1.0) {
            small_run + 1
        } else {
            0
        };
        if small_run >= 2 {
            let diag = SeriesDiagnostics {
                terms_used: used + 1,
                last_term_magnitude: last,
                partial_sums: tail,
                converged: true,
                closed_form_target: Some(closed_form(a)),
            };
            return Ok((value, diag));
        }
    }
    Err(Error::NotConverged {
        terms: max_terms,
        last_term: last,
    })
}

/// One row of the per-term ledger.
#[derive(Clone, Debug, PartialEq)]
pub struct TermRow {
    pub m: u32,
    /// Exact term `(π/a)(−a)^m / m!`, a rational multiple of `π`.
    pub term: ExactValue,
    pub term_value: f64,
    pub partial_sum: f64,
}

/// Terms `m = 0..=m_max` with running partial sums.
pub fn term_table(a: f64, m_max: u32) -> Result<Vec<TermRow>> {
    let mut partial = BigRational::zero();
    TermIter::new(exact_a(a)?)
        .take(m_max as usize + 1)
        .enumerate()
        .map(|(m, term)| {
            let term = term?;
            partial += &term;
            Ok(TermRow {
                m: m as u32,
                term_value: pi_times(&term),
                term: ExactValue::new(term, 2, 0),
                partial_sum: pi_times(&partial),
            })
        })
        .collect()
}
