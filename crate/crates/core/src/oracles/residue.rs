//! Residue-theorem evaluation of `∫ P(x) e^{iωx} / Q(x) dx`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Relative residual allowed when checking `Q(root) ≈ 0` on the expanded
/// coefficient form.
const ROOT_RESIDUAL: f64 = 1e-10;

/// `P(x) e^{iωx} / Q(x)` with `Q` monic and given by its upper half-plane
/// roots; each listed root implies its conjugate with the same multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalIntegrand {
    /// Ascending coefficients of `P`.
    pub numerator: Vec<f64>,
    /// `(root, multiplicity)` with `Im(root) > 0`.
    pub roots: Vec<(Complex64, u32)>,
    pub omega: f64,
}

impl RationalIntegrand {
    pub fn new(numerator: Vec<f64>, roots: Vec<(Complex64, u32)>, omega: f64) -> Result<Self> {
        let integrand = RationalIntegrand {
            numerator,
            roots,
            omega,
        };
        integrand.validate()?;
        Ok(integrand)
    }

    /// `e^{iωx} / (x² + a²)`.
    pub fn lorentzian(a: f64, omega: f64) -> Result<Self> {
        Self::new(vec![1.0], vec![(Complex64::new(0.0, a), 1)], omega)
    }

    pub fn numerator_degree(&self) -> usize {
        self.numerator.iter().rposition(|c| *c != 0.0).unwrap_or(0)
    }

    pub fn denominator_degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| 2 * *m as usize).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.roots.is_empty() {
            return Err(Error::InvalidIntegrand("denominator has no roots".into()));
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(Error::InvalidIntegrand(format!(
                "omega must be >= 0, got {}",
                self.omega
            )));
        }
        if self.numerator.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidIntegrand(
                "non-finite numerator coefficient".into(),
            ));
        }
        for (root, m) in &self.roots {
            if !root.re.is_finite() || !root.im.is_finite() {
                return Err(Error::InvalidIntegrand(format!("non-finite root {root}")));
            }
            if root.im == 0.0 {
                return Err(Error::RealAxisRoot(root.to_string()));
            }
            if root.im < 0.0 {
                return Err(Error::InvalidIntegrand(format!(
                    "root {root} must be listed by its upper half-plane member"
                )));
            }
            if *m == 0 {
                return Err(Error::InvalidIntegrand(format!(
                    "root {root} has multiplicity 0"
                )));
            }
        }
        let (dp, dq) = (self.numerator_degree(), self.denominator_degree());
        let margin = if self.omega == 0.0 { 2 } else { 1 };
        if dq < dp + margin {
            return Err(Error::DegreeConditionViolated {
                numerator: dp,
                denominator: dq,
                omega: self.omega,
            });
        }
        let coeffs = self.denominator_coefficients();
        for (root, _) in &self.roots {
            let (value, scale) = horner_with_scale(&coeffs, *root);
            if value.norm() > ROOT_RESIDUAL * scale {
                return Err(Error::InvalidIntegrand(format!(
                    "Q({root}) residual {:e} exceeds tolerance",
                    value.norm() / scale
                )));
            }
        }
        Ok(())
    }

    /// Ascending coefficients of `Q(z) = Π (z − ρ)^m (z − ρ̄)^m`.
    pub fn denominator_coefficients(&self) -> Vec<Complex64> {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for (root, m) in &self.roots {
            for _ in 0..*m {
                for r in [*root, root.conj()] {
                    let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                    for (k, c) in coeffs.iter().enumerate() {
                        next[k + 1] += c;
                        next[k] -= c * r;
                    }
                    coeffs = next;
                }
            }
        }
        coeffs
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let p = self
            .numerator
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
        let q = self
            .roots
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, (r, m)| {
                acc * ((x - r) * (x - r.conj())).powu(*m)
            });
        p * (Complex64::i() * self.omega * x).exp() / q
    }

    /// `P(x) cos(ωx) / Q(x)` on the real line, the real part of the integrand.
    pub fn cos_projection(&self) -> impl Fn(f64) -> f64 + '_ {
        move |x| {
            let p: f64 = self.numerator.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let q: f64 = self.roots.iter().fold(1.0, |acc, (r, m)| {
                acc * ((x - r.re).powi(2) + r.im * r.im).powi(*m as i32)
            });
            p * (self.omega * x).cos() / q
        }
    }
}

fn horner_with_scale(coeffs: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for c in coeffs.iter().rev() {
        value = value * z + c;
        scale = scale * z.norm() + c.norm();
    }
    (value, scale.max(f64::MIN_POSITIVE))
}

/// Truncated power series in `h`, coefficients `0..len`.
fn series_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    (0..n)
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `Res_{z=ρ} P(z) e^{iωz} / Q(z)` for a listed root of order `m`.
///
/// Expands every factor except `(z − ρ)^{−m}` in a Taylor series about
/// `ρ`; the residue is the coefficient of `h^{m−1}` of the product.
pub fn residue_at(
    integrand: &RationalIntegrand,
    root: Complex64,
    multiplicity: u32,
) -> Result<Complex64> {
    let tol = 1e-12 * root.norm().max(1.0);
    let listed = integrand
        .roots
        .iter()
        .position(|(r, m)| (r - root).norm() <= tol && *m == multiplicity)
        .ok_or_else(|| Error::RootNotListed(format!("{root} (multiplicity {multiplicity})")))?;
    let rho = integrand.roots[listed].0;
    let n = multiplicity as usize;
    let zero = Complex64::new(0.0, 0.0);

    // P(ρ + h)
    let mut series: Vec<Complex64> = (0..n)
        .map(|j| {
            integrand
                .numerator
                .iter()
                .enumerate()
                .skip(j)
                .map(|(k, c)| *c * binomial(k, j) * rho.powu((k - j) as u32))
                .sum()
        })
        .collect();

    // e^{iω(ρ + h)}
    let iw = Complex64::i() * integrand.omega;
    let mut exp_series = vec![zero; n];
    let mut term = (iw * rho).exp();
    for (j, slot) in exp_series.iter_mut().enumerate() {
        *slot = term;
        term = term * iw / (j + 1) as f64;
    }
    series = series_mul(&series, &exp_series);

    // (ρ + h − c)^{−k} for every other root c
    let mut others: Vec<(Complex64, u32)> = integrand
        .roots
        .iter()
        .map(|(r, m)| (r.conj(), *m))
        .collect();
    others.extend(
        integrand
            .roots
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != listed)
            .map(|(_, rm)| *rm),
    );
    for (c, k) in others {
        let d = rho - c;
        let lead = d.powi(-(k as i32));
        let factor: Vec<Complex64> = (0..n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                lead * sign * binomial(k as usize + j - 1, j) / d.powu(j as u32)
            })
            .collect();
        series = series_mul(&series, &factor);
    }
    Ok(series[n - 1])
}

/// `2πi Σ Res` over the upper half-plane roots.
pub fn integrate_by_residues(integrand: &RationalIntegrand) -> Result<Complex64> {
    integrand.validate()?;
    let sum = integrand
        .roots
        .iter()
        .map(|(r, m)| residue_at(integrand, *r, *m))
        .sum::<Result<Complex64>>()?;
    Ok(Complex64::new(0.0, 2.0 * PI) * sum)
}
