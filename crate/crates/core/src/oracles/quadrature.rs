//! Adaptive quadrature over the whole real line.
//!
//! Two schedules are available. [`Transform::SinhSinh`] maps the line with
//! `x = sinh(π/2 · sinh t)` and runs the trapezoid rule with step halving;
//! the transformed integrand decays double-exponentially for Gaussians and
//! for rational functions falling off like `1/x²`. For slowly decaying
//! oscillatory integrands, [`Transform::OscillatoryPanels`] folds the line
//! onto `[0, ∞)`, integrates between consecutive zeros of `cos(ωx)` with
//! adaptive Gauss–Kronrod, and extrapolates the alternating panel sums with
//! Wynn's epsilon algorithm.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Default sample budget per integral.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Transform {
    SinhSinh,
    /// Panels between zeros of `cos(ωx)`, `ω > 0`.
    OscillatoryPanels {
        omega: f64,
    },
}

#[derive(Clone, Debug)]
pub struct QuadratureRequest<F> {
    pub integrand: F,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub transform: Transform,
    pub budget: usize,
}

impl<F: Fn(f64) -> f64> QuadratureRequest<F> {
    pub fn new(integrand: F, transform: Transform) -> Self {
        QuadratureRequest {
            integrand,
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            transform,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Counts samples, rejects non-finite values and enforces the budget.
struct Sampler<'a, F> {
    f: &'a F,
    count: Cell<usize>,
    budget: usize,
}

impl<F: Fn(f64) -> f64> Sampler<'_, F> {
    fn eval(&self, x: f64) -> Result<f64> {
        let n = self.count.get() + 1;
        self.count.set(n);
        if n > self.budget {
            return Err(Error::ToleranceNotReached {
                estimate: f64::NAN,
                error: f64::INFINITY,
                evaluations: n - 1,
            });
        }
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample(x))
        }
    }
}

pub fn integrate_numeric<F: Fn(f64) -> f64>(
    req: &QuadratureRequest<F>,
) -> Result<QuadratureResult> {
    if !(req.abs_tol.is_finite()
        && req.abs_tol > 0.0
        && req.rel_tol.is_finite()
        && req.rel_tol > 0.0)
    {
        return Err(Error::Config(format!(
            "tolerances must be positive (abs {}, rel {})",
            req.abs_tol, req.rel_tol
        )));
    }
    let sampler = Sampler {
        f: &req.integrand,
        count: Cell::new(0),
        budget: req.budget,
    };
    let (value, error_estimate) = match req.transform {
        Transform::SinhSinh => sinh_sinh(&sampler, req.abs_tol, req.rel_tol),
        Transform::OscillatoryPanels { omega } if omega > 0.0 && omega.is_finite() => {
            oscillatory(&sampler, omega, req.abs_tol, req.rel_tol)
        }
        Transform::OscillatoryPanels { omega } => {
            return Err(Error::Config(format!(
                "panel frequency must be positive, got {omega}"
            )))
        }
    }
    .map_err(|e| match e {
        Error::ToleranceNotReached {
            estimate, error, ..
        } => Error::ToleranceNotReached {
            estimate,
            error,
            evaluations: sampler.count.get(),
        },
        other => other,
    })?;
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations: sampler.count.get(),
    })
}

const T_MAX: f64 = 4.5;
const MAX_LEVEL: u32 = 12;

fn sinh_sinh<F: Fn(f64) -> f64>(
    s: &Sampler<'_, F>,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let node = |t: f64| -> Result<f64> {
        let u = FRAC_PI_2 * t.sinh();
        let x = u.sinh();
        let w = FRAC_PI_2 * t.cosh() * u.cosh();
        if !w.is_finite() {
            return Ok(0.0);
        }
        let y = s.eval(x)?;
        Ok(if y == 0.0 { 0.0 } else { y * w })
    };

    let mut h = 1.0;
    let mut sum = node(0.0)?;
    let mut k = 1.0;
    while k * h <= T_MAX {
        sum += node(k * h)? + node(-k * h)?;
        k += 1.0;
    }
    let mut estimate = h * sum;
    let mut error = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h /= 2.0;
        let mut fresh = 0.0;
        let mut t = h;
        while t <= T_MAX {
            fresh += node(t)? + node(-t)?;
            t += 2.0 * h;
        }
        sum += fresh;
        let next = h * sum;
        error = (next - estimate).abs();
        estimate = next;
        if level >= 3 && error <= abs_tol.max(rel_tol * estimate.abs()) {
            return Ok((estimate, error));
        }
    }
    Err(Error::ToleranceNotReached {
        estimate,
        error,
        evaluations: 0,
    })
}

// Gauss–Kronrod 7/15 nodes and weights (QUADPACK qk15), kept at full published precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(s: &Sampler<'_, F>, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = s.eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = s.eval(center - dx)? + s.eval(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Adaptive bisection on `[a, b]` to an absolute tolerance.
fn adaptive<F: Fn(f64) -> f64>(s: &Sampler<'_, F>, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    const MAX_DEPTH: u32 = 40;
    let mut total = 0.0;
    let mut error = 0.0;
    let mut stack = vec![(a, b, gk15(s, a, b)?, 0u32)];
    while let Some((lo, hi, (value, err), depth)) = stack.pop() {
        let local_tol = tol * (hi - lo) / (b - a);
        if err <= local_tol.max(1e-15 * value.abs()) || depth >= MAX_DEPTH {
            total += value;
            error += err;
            continue;
        }
        let mid = 0.5 * (lo + hi);
        stack.push((lo, mid, gk15(s, lo, mid)?, depth + 1));
        stack.push((mid, hi, gk15(s, mid, hi)?, depth + 1));
    }
    Ok((total, error))
}

const MIN_PANELS: usize = 12;
const MAX_PANELS: usize = 4000;

fn oscillatory<F: Fn(f64) -> f64>(
    s: &Sampler<'_, F>,
    omega: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let folded = |x: f64| -> Result<f64> { Ok(s.eval(x)? + s.eval(-x)?) };
    let folded_sampler_fn = |x: f64| folded(x).unwrap_or(f64::NAN);
    // Panel integration runs on the folded integrand; sample errors surface
    // as NaN and are re-raised below.
    let inner = Sampler {
        f: &folded_sampler_fn,
        count: Cell::new(0),
        budget: usize::MAX,
    };
    let panel_tol = (abs_tol * 1e-2).max(1e-17);
    let half_period = PI / omega;
    let mut edges = (0.0, FRAC_PI_2 / omega);
    let mut partial = Vec::with_capacity(64);
    let mut sum = 0.0;
    let mut panel_error = 0.0;
    let mut previous: Option<f64> = None;
    for n in 0..MAX_PANELS {
        let (value, err) = adaptive(&inner, edges.0, edges.1, panel_tol).map_err(|e| match e {
            Error::NonFiniteSample(_) => sample_failure(s, edges),
            other => other,
        })?;
        if !value.is_finite() {
            return Err(sample_failure(s, edges));
        }
        sum += value;
        panel_error += err;
        partial.push(sum);
        edges = (edges.1, edges.1 + half_period);
        if partial.len() < MIN_PANELS {
            continue;
        }
        let window = &partial[partial.len().saturating_sub(40)..];
        let extrapolated = wynn_epsilon(window);
        if let Some(prev) = previous {
            let change = (extrapolated - prev).abs();
            let target = abs_tol.max(rel_tol * extrapolated.abs());
            if change <= target && n + 1 >= MIN_PANELS {
                return Ok((extrapolated, change + panel_error));
            }
        }
        previous = Some(extrapolated);
    }
    Err(Error::ToleranceNotReached {
        estimate: previous.unwrap_or(sum),
        error: f64::INFINITY,
        evaluations: 0,
    })
}

fn sample_failure<F: Fn(f64) -> f64>(s: &Sampler<'_, F>, edges: (f64, f64)) -> Error {
    if s.count.get() > s.budget {
        Error::ToleranceNotReached {
            estimate: f64::NAN,
            error: f64::INFINITY,
            evaluations: s.budget,
        }
    } else {
        Error::NonFiniteSample(edges.0)
    }
}

/// Wynn's epsilon algorithm: the highest even-column entry of the table
/// built from `sums`.
pub fn wynn_epsilon(sums: &[f64]) -> f64 {
    let n = sums.len();
    if n < 3 {
        return sums.last().copied().unwrap_or(0.0);
    }
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = sums.to_vec();
    let mut best = *sums.last().unwrap();
    let mut column = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let diff = cur[j + 1] - cur[j];
            if diff == 0.0 {
                return if column % 2 == 0 { cur[j + 1] } else { best };
            }
            next.push(prev[j + 1] + 1.0 / diff);
        }
        column += 1;
        if column % 2 == 0 {
            let candidate = *next.last().unwrap();
            if candidate.is_finite() {
                best = candidate;
            } else {
                break;
            }
        }
        prev = cur;
        cur = next;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::E;

    #[test]
    fn lorentzian_by_sinh_sinh() {
        let req = QuadratureRequest::new(|x: f64| 1.0 / (x * x + 1.0), Transform::SinhSinh);
        let r = integrate_numeric(&req).unwrap();
        assert_relative_eq!(r.value, PI, max_relative = 1e-13);
        assert!(r.evaluations < 100_000);
    }

    #[test]
    fn gaussian_by_sinh_sinh() {
        let req = QuadratureRequest::new(|x: f64| (-x * x).exp(), Transform::SinhSinh);
        let r = integrate_numeric(&req).unwrap();
        assert_relative_eq!(r.value, PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn cosine_lorentzian_by_panels() {
        let req = QuadratureRequest::new(
            |x: f64| x.cos() / (x * x + 1.0),
            Transform::OscillatoryPanels { omega: 1.0 },
        );
        let r = integrate_numeric(&req).unwrap();
        assert!((r.value - PI / E).abs() < 1e-11, "{}", r.value - PI / E);
        assert!(r.evaluations <= DEFAULT_BUDGET);
    }

    #[test]
    fn wynn_on_alternating_harmonic() {
        let sums: Vec<f64> = (1..=20)
            .scan(0.0, |acc, k| {
                *acc += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                Some(*acc)
            })
            .collect();
        assert_relative_eq!(wynn_epsilon(&sums), 2f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn non_finite_sample_is_reported() {
        let req = QuadratureRequest::new(|x: f64| 1.0 / x, Transform::SinhSinh);
        assert!(matches!(
            integrate_numeric(&req),
            Err(Error::NonFiniteSample(_))
        ));
    }

    #[test]
    fn budget_exhaustion() {
        let req =
            QuadratureRequest::new(|x: f64| 1.0 / (x * x + 1.0), Transform::SinhSinh).budget(10);
        assert!(matches!(
            integrate_numeric(&req),
            Err(Error::ToleranceNotReached { .. })
        ));
    }

    #[test]
    fn rejects_bad_tolerances() {
        let req = QuadratureRequest::new(|x: f64| x, Transform::SinhSinh).tolerances(0.0, 1e-3);
        assert!(integrate_numeric(&req).is_err());
        let req = QuadratureRequest::new(|x: f64| x, Transform::OscillatoryPanels { omega: 0.0 });
        assert!(integrate_numeric(&req).is_err());
    }
}
