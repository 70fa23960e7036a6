//! The negative-dimensional pipeline for `∫ xʳ (x² + a²)ˢ dx`.
//!
//! The Gaussian generating functional
//! `G(α, β) = ∫ e^{−αx} e^{−β(x²+a²)} dx = √(π/β) e^{−βa² + α²/(4β)}`
//! is expanded two ways: in powers of the integrand exponents (which produces
//! the negative-dimensional integrals) and in powers of its closed form.
//! Matching the `αʳ βˢ` coefficients gives the integrals in closed form;
//! the Pochhammer reflection identity then continues `s` to negative values.
//!
//! The scale `a` stays symbolic: results are [`ScaledValue`]s, an exact
//! value times an integer power of `a`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{pochhammer, pochhammer_reflect, twice_lattice, Branch, ExactValue};

/// `∫ xʳ (x² + a²)ˢ dx` with `a` kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralSpec {
    r: u32,
    s: BigRational,
}

impl IntegralSpec {
    pub fn new(r: u32, s: BigRational) -> Result<Self> {
        twice_lattice(&s)?;
        Ok(IntegralSpec { r, s })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    /// `r + 2s + 1`, always an integer on the half-integer lattice.
    pub fn a_power(&self) -> i64 {
        let p = BigRational::from_integer(BigInt::from(self.r + 1)) + &self.s * BigInt::from(2);
        p.to_integer().to_i64().expect("small exponent")
    }

    fn r_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.r))
    }
}

/// An exact value times `a^a_power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledValue {
    pub value: ExactValue,
    pub a_power: i64,
}

impl ScaledValue {
    /// Binds `a` to an exact positive rational.
    pub fn bind(&self, a: &BigRational) -> Result<ExactValue> {
        if !a.is_positive() {
            return Err(Error::InvalidSpec(format!("a must be positive, got {a}")));
        }
        let scale = num_traits::pow::Pow::pow(a, self.a_power as i32);
        self.value.scale(&scale)
    }

    pub fn eval(&self, a: f64) -> Option<Complex64> {
        self.value
            .to_complex()
            .map(|z| z * a.powi(self.a_power as i32))
    }

    pub fn is_pole(&self) -> bool {
        self.value.is_pole()
    }
}

/// Parameters of the Gaussian generating functional.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneratingParams {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
}

impl GeneratingParams {
    pub fn new(alpha: f64, beta: f64, a: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::NonPositiveBeta(beta));
        }
        if !alpha.is_finite() || !a.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "alpha = {alpha}, a = {a} must be finite"
            )));
        }
        Ok(GeneratingParams { alpha, beta, a })
    }

    /// The integrand `e^{−αx − β(x² + a²)}`, with the exponent combined so
    /// it underflows to zero instead of producing `∞ · 0`.
    pub fn integrand(&self) -> impl Fn(f64) -> f64 + Copy {
        let GeneratingParams { alpha, beta, a } = *self;
        move |x| (-alpha * x - beta * (x * x + a * a)).exp()
    }
}

/// `√(π/β) e^{−βa² + α²/(4β)}`.
pub fn generating_closed_form(p: &GeneratingParams) -> Result<f64> {
    if p.beta.is_nan() || p.beta <= 0.0 {
        return Err(Error::NonPositiveBeta(p.beta));
    }
    let exponent = -p.beta * p.a * p.a + p.alpha * p.alpha / (4.0 * p.beta);
    Ok((PI / p.beta).sqrt() * exponent.exp())
}

/// Index pair of the double series of the generating functional's closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesIndex {
    pub k: u32,
    pub l: u32,
}

/// One term `c · a^{2k} α^{2l} β^{k−l−1/2}` of the expanded closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingTerm {
    pub coeff: ExactValue,
    pub a_power: u32,
    pub alpha_power: u32,
    pub beta_power: BigRational,
}

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `√π (−1)ᵏ / (4ˡ k! l!)` with its monomial exponents.
pub fn generating_series_coefficient(idx: SeriesIndex) -> GeneratingTerm {
    let SeriesIndex { k, l } = idx;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let den = BigInt::from(4).pow(l) * factorial(k) * factorial(l);
    let coeff = BigRational::new(BigInt::from(sign), den);
    GeneratingTerm {
        coeff: ExactValue::new(coeff, 1, 0),
        a_power: 2 * k,
        alpha_power: 2 * l,
        beta_power: BigRational::from_integer(BigInt::from(i64::from(k) - i64::from(l)))
            - BigRational::new(BigInt::one(), BigInt::from(2)),
    }
}

/// `r = 2l`, `s = k − l − 1/2`.
pub fn solve_constraints_forward(idx: SeriesIndex) -> (u32, BigRational) {
    let r = 2 * idx.l;
    let s = BigRational::new(
        BigInt::from(2 * i64::from(idx.k) - 2 * i64::from(idx.l) - 1),
        BigInt::from(2),
    );
    (r, s)
}

/// Inverse of [`solve_constraints_forward`]; fails when `(r, s)` is only
/// reachable by continuation.
pub fn solve_constraints_inverse(r: i64, s: &BigRational) -> Result<SeriesIndex> {
    let no_preimage = || Error::NoPreimage {
        r,
        s: s.to_string(),
    };
    if r < 0 || r % 2 != 0 {
        return Err(no_preimage());
    }
    let l = r / 2;
    let k = s
        + BigRational::from_integer(BigInt::from(l))
        + BigRational::new(BigInt::one(), BigInt::from(2));
    if !k.is_integer() || k.is_negative() {
        return Err(no_preimage());
    }
    let k = k.to_integer().to_u32().ok_or_else(no_preimage)?;
    Ok(SeriesIndex { k, l: l as u32 })
}

/// `(−π)^{1/2}`, principal root.
fn sqrt_minus_pi() -> ExactValue {
    ExactValue::new(BigRational::one(), 1, 1)
}

/// `(−π)^{1/2} a^{r+2s+1} / (2ʳ (r+1)_{−r/2} · s_factor)`.
fn closed_form_with(spec: &IntegralSpec, s_factor: ExactValue) -> Result<ScaledValue> {
    let r = spec.r_rational();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let r_factor = pochhammer(&(&r + BigRational::one()), &(-&r * &half))?;
    let two_r = ExactValue::rational(BigRational::from_integer(BigInt::from(2).pow(spec.r)));
    let denominator = two_r.mul(&r_factor)?.mul(&s_factor)?;
    Ok(ScaledValue {
        value: sqrt_minus_pi().div(&denominator)?,
        a_power: spec.a_power(),
    })
}

fn s_pochhammer_index(spec: &IntegralSpec) -> (BigRational, BigRational) {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let p = spec.s() + BigRational::one();
    let q = spec.r_rational() * &half + half;
    (p, q)
}

/// The negative-dimensional closed form exactly as printed, before the
/// sign `(−1)^{r/2}` that term matching requires.
pub fn i_star_printed(spec: &IntegralSpec) -> Result<ScaledValue> {
    let (p, q) = s_pochhammer_index(spec);
    closed_form_with(spec, pochhammer(&p, &q)?)
}

/// `I*(r, s)`: the negative-dimensional integral obtained by matching the
/// `αʳ βˢ` coefficients of both expansions of the generating functional,
/// `iʳ (−π)^{1/2} a^{r+2s+1} / (2ʳ (r+1)_{−r/2} (s+1)_{r/2+1/2})`.
pub fn i_star(spec: &IntegralSpec) -> Result<ScaledValue> {
    let printed = i_star_printed(spec)?;
    Ok(ScaledValue {
        value: printed.value.mul(&ExactValue::i_pow(i64::from(spec.r)))?,
        a_power: printed.a_power,
    })
}

/// Continued integral: the printed closed form with `(s+1)_{r/2+1/2}`
/// replaced by its reflection `(−1)^{−q} / (−s)_{−q}`.
pub fn i_star_ac(spec: &IntegralSpec) -> Result<ScaledValue> {
    i_star_ac_with(spec, crate::specfun::REFLECTION_BRANCH)
}

pub fn i_star_ac_with(spec: &IntegralSpec, branch: Branch) -> Result<ScaledValue> {
    let (p, q) = s_pochhammer_index(spec);
    closed_form_with(spec, pochhammer_reflect(&p, &q, branch)?)
}

/// `(π/a)(−a)ʳ`: the continued moment at `s = −1`, used for every `r`.
pub fn a_of_r(r: u32, a: f64) -> f64 {
    PI / a * (-a).powi(r as i32)
}

/// Exact form of [`a_of_r`] for rational `a`: a rational multiple of `π`.
pub fn a_of_r_exact(r: u32, a: &BigRational) -> Result<ExactValue> {
    if !a.is_positive() {
        return Err(Error::InvalidSpec(format!("a must be positive, got {a}")));
    }
    let coeff = num_traits::pow::Pow::pow(-a.clone(), r) / a;
    Ok(ExactValue::new(coeff, 2, 0))
}

/// `∫ (x²)ⁿ dx` in positive and negative dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialIntegral {
    pub n: u32,
    pub continued: bool,
    pub value: ExactValue,
    /// `(−1)ⁿ n! √π`, the prefactor of the Kronecker delta.
    pub prefactor: ExactValue,
    /// `n + 1/2`; the delta fires only when this is zero.
    pub delta_argument: BigRational,
}

/// Positive dimension: zero. Negative dimension: `(−1)ⁿ n! √π δ_{n+1/2, 0}`,
/// which also vanishes for every integer `n ≥ 0`.
pub fn i_pol(n: i64, continued: bool) -> Result<PolynomialIntegral> {
    if n < 0 {
        return Err(Error::NegativeN(n));
    }
    let n = u32::try_from(n).map_err(|_| Error::InvalidSpec(format!("n = {n} too large")))?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let prefactor = ExactValue::new(BigRational::from_integer(factorial(n) * sign), 1, 0);
    let delta_argument = BigRational::from_integer(BigInt::from(n))
        + BigRational::new(BigInt::one(), BigInt::from(2));
    let value = if continued && delta_argument.is_zero() {
        prefactor.clone()
    } else {
        ExactValue::zero()
    };
    Ok(PolynomialIntegral {
        n,
        continued,
        value,
        prefactor,
        delta_argument,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn spec(r: u32, sn: i64, sd: i64) -> IntegralSpec {
        IntegralSpec::new(r, ratio(sn, sd)).unwrap()
    }

    #[test]
    fn generating_closed_form_examples() {
        let v = generating_closed_form(&GeneratingParams::new(0.0, 1.0, 0.0).unwrap()).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-15);
        let v = generating_closed_form(&GeneratingParams::new(2.0, 1.0, 1.0).unwrap()).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-15);
        assert!(matches!(
            GeneratingParams::new(0.0, 0.0, 1.0),
            Err(Error::NonPositiveBeta(_))
        ));
        let bad = GeneratingParams {
            alpha: 0.0,
            beta: -1.0,
            a: 1.0,
        };
        assert!(generating_closed_form(&bad).is_err());
    }

    #[test]
    fn series_coefficients() {
        let t = generating_series_coefficient(SeriesIndex { k: 0, l: 0 });
        assert_eq!(t.coeff, ExactValue::sqrt_pi());
        assert_eq!((t.a_power, t.alpha_power), (0, 0));
        assert_eq!(t.beta_power, ratio(-1, 2));

        let t = generating_series_coefficient(SeriesIndex { k: 1, l: 0 });
        assert_eq!(t.coeff, ExactValue::sqrt_pi().neg());
        assert_eq!(t.a_power, 2);
        assert_eq!(t.beta_power, ratio(1, 2));

        let t = generating_series_coefficient(SeriesIndex { k: 0, l: 2 });
        assert_eq!(t.coeff, ExactValue::new(ratio(1, 32), 1, 0));
        assert_eq!(t.alpha_power, 4);
        assert_eq!(t.beta_power, ratio(-5, 2));
    }

    #[test]
    fn constraints() {
        assert_eq!(
            solve_constraints_forward(SeriesIndex { k: 0, l: 0 }),
            (0, ratio(-1, 2))
        );
        assert_eq!(
            solve_constraints_forward(SeriesIndex { k: 2, l: 1 }),
            (2, ratio(1, 2))
        );
        assert_eq!(
            solve_constraints_forward(SeriesIndex { k: 0, l: 3 }),
            (6, ratio(-7, 2))
        );
        assert_eq!(
            solve_constraints_inverse(0, &ratio(-1, 2)).unwrap(),
            SeriesIndex { k: 0, l: 0 }
        );
        assert_eq!(
            solve_constraints_inverse(4, &ratio(1, 2)).unwrap(),
            SeriesIndex { k: 3, l: 2 }
        );
        assert!(matches!(
            solve_constraints_inverse(1, &ratio(-1, 2)),
            Err(Error::NoPreimage { .. })
        ));
        assert!(solve_constraints_inverse(0, &ratio(-3, 2)).is_err());
        assert!(solve_constraints_inverse(2, &ratio(-1, 1)).is_err());
    }

    #[test]
    fn i_star_leading_term() {
        let v = i_star(&spec(0, -1, 2)).unwrap();
        assert_eq!(v.value, ExactValue::new(ratio(1, 1), 2, 1));
        assert_eq!(v.a_power, 0);
    }

    #[test]
    fn continued_examples() {
        let v = i_star_ac(&spec(0, -1, 1)).unwrap();
        assert_eq!(v.value, ExactValue::pi());
        assert_eq!(v.a_power, -1);

        let v = i_star_ac(&spec(2, -1, 1)).unwrap();
        assert_eq!(v.bind(&ratio(1, 1)).unwrap(), ExactValue::pi());

        assert!(i_star_ac(&spec(1, -1, 1)).unwrap().is_pole());
        // the direct closed form has (0)_{q} = 0 in its denominator at s = −1
        assert!(i_star(&spec(0, -1, 1)).unwrap().is_pole());
    }

    #[test]
    fn flipped_branch_negates_even_moments() {
        let v = i_star_ac_with(&spec(0, -1, 1), Branch::PlusI).unwrap();
        assert_eq!(v.value, ExactValue::pi().neg());
    }

    #[test]
    fn a_of_r_examples() {
        assert!((a_of_r(0, 1.0) - PI).abs() < 1e-15);
        assert!((a_of_r(1, 1.0) + PI).abs() < 1e-15);
        assert!((a_of_r(2, 2.0) - 2.0 * PI).abs() < 1e-15);
        assert_eq!(
            a_of_r_exact(1, &ratio(1, 1)).unwrap(),
            ExactValue::pi().neg()
        );
        assert!(a_of_r_exact(0, &ratio(0, 1)).is_err());
    }

    #[test]
    fn polynomial_integral() {
        for n in 0..=20 {
            assert!(i_pol(n, false).unwrap().value.is_zero());
            let c = i_pol(n, true).unwrap();
            assert!(c.value.is_zero());
            assert_eq!(c.delta_argument, ratio(2 * n + 1, 2));
        }
        assert_eq!(
            i_pol(3, true).unwrap().prefactor,
            ExactValue::new(ratio(-6, 1), 1, 0)
        );
        assert!(matches!(i_pol(-1, true), Err(Error::NegativeN(-1))));
    }

    #[test]
    fn scaled_value_binding() {
        let v = ScaledValue {
            value: ExactValue::pi(),
            a_power: -1,
        };
        assert_eq!(
            v.bind(&ratio(2, 1)).unwrap(),
            ExactValue::new(ratio(1, 2), 2, 0)
        );
        assert!(v.bind(&ratio(-1, 1)).is_err());
        let z = v.eval(2.0).unwrap();
        assert!((z.re - PI / 2.0).abs() < 1e-15);
    }
}
