//! Exact gamma functions and Pochhammer symbols on the integer and
//! half-integer lattice.
//!
//! Every value is carried as an [`ExactValue`]: a rational coefficient times
//! `π^(e/2)` times `iᵗ`, or a pole marker. Poles carry an order but no
//! residue; the product form of the Pochhammer symbol is what cancels
//! pole/pole ratios exactly.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar `coeff · π^(pi_half_power/2) · i^i_power`, or a gamma pole.
///
/// Finite values are canonical: `i_power ∈ {0, 1}` (a factor `i²` is folded
/// into the sign of `coeff`) and zero is always `0 · π⁰ · i⁰`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactValue {
    Finite {
        coeff: BigRational,
        pi_half_power: i32,
        i_power: u8,
    },
    Pole {
        order: u32,
    },
}

impl ExactValue {
    pub fn new(coeff: BigRational, pi_half_power: i32, i_power: i64) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let t = i_power.rem_euclid(4);
        let (coeff, t) = if t >= 2 { (-coeff, t - 2) } else { (coeff, t) };
        ExactValue::Finite {
            coeff,
            pi_half_power,
            i_power: t as u8,
        }
    }

    pub fn zero() -> Self {
        ExactValue::Finite {
            coeff: BigRational::zero(),
            pi_half_power: 0,
            i_power: 0,
        }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(coeff: BigRational) -> Self {
        Self::new(coeff, 0, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `√π`.
    pub fn sqrt_pi() -> Self {
        Self::new(BigRational::one(), 1, 0)
    }

    /// `π`.
    pub fn pi() -> Self {
        Self::new(BigRational::one(), 2, 0)
    }

    /// The imaginary unit.
    pub fn imag_unit() -> Self {
        Self::new(BigRational::one(), 0, 1)
    }

    /// `iⁿ` for any integer `n`.
    pub fn i_pow(n: i64) -> Self {
        Self::new(BigRational::one(), 0, n)
    }

    pub fn pole(order: u32) -> Self {
        ExactValue::Pole {
            order: order.max(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactValue::Finite { coeff, .. } if coeff.is_zero())
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, ExactValue::Pole { .. })
    }

    pub fn is_finite(&self) -> bool {
        !self.is_pole()
    }

    pub fn coeff(&self) -> Option<&BigRational> {
        match self {
            ExactValue::Finite { coeff, .. } => Some(coeff),
            ExactValue::Pole { .. } => None,
        }
    }

    pub fn pi_half_power(&self) -> Option<i32> {
        match self {
            ExactValue::Finite { pi_half_power, .. } => Some(*pi_half_power),
            ExactValue::Pole { .. } => None,
        }
    }

    pub fn i_power(&self) -> Option<u8> {
        match self {
            ExactValue::Finite { i_power, .. } => Some(*i_power),
            ExactValue::Pole { .. } => None,
        }
    }

    /// Product. A pole times a nonzero finite value stays a pole; a pole
    /// times zero has no defined value.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        use ExactValue::*;
        match (self, other) {
            (
                Finite {
                    coeff: c1,
                    pi_half_power: e1,
                    i_power: t1,
                },
                Finite {
                    coeff: c2,
                    pi_half_power: e2,
                    i_power: t2,
                },
            ) => Ok(Self::new(c1 * c2, e1 + e2, i64::from(*t1) + i64::from(*t2))),
            (Pole { order: a }, Pole { order: b }) => Ok(Self::pole(a + b)),
            (Pole { order }, f) | (f, Pole { order }) => {
                if f.is_zero() {
                    Err(Error::IndeterminateRatio(format!(
                        "pole of order {order} times zero"
                    )))
                } else {
                    Ok(Self::pole(*order))
                }
            }
        }
    }

    /// Reciprocal: `1/0` is a simple pole and `1/pole` is zero.
    pub fn recip(&self) -> Self {
        match self {
            ExactValue::Pole { .. } => Self::zero(),
            ExactValue::Finite { coeff, .. } if coeff.is_zero() => Self::pole(1),
            ExactValue::Finite {
                coeff,
                pi_half_power,
                i_power,
            } => Self::new(coeff.recip(), -pi_half_power, -i64::from(*i_power)),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (ExactValue::Pole { .. }, ExactValue::Pole { .. }) => {
                Err(Error::IndeterminateRatio(format!("{self} / {other}")))
            }
            _ if self.is_zero() && other.is_zero() => {
                Err(Error::IndeterminateRatio("0 / 0".to_string()))
            }
            _ => self.mul(&other.recip()),
        }
    }

    /// Sum of two finite values sharing the same `π` and `i` powers.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        match (self, other) {
            (
                ExactValue::Finite {
                    coeff: c1,
                    pi_half_power: e1,
                    i_power: t1,
                },
                ExactValue::Finite {
                    coeff: c2,
                    pi_half_power: e2,
                    i_power: t2,
                },
            ) if e1 == e2 && t1 == t2 => Ok(Self::new(c1 + c2, *e1, i64::from(*t1))),
            _ => Err(Error::MixedPowers(self.to_string(), other.to_string())),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactValue::Finite {
                coeff,
                pi_half_power,
                i_power,
            } => Self::new(-coeff.clone(), *pi_half_power, i64::from(*i_power)),
            p => p.clone(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Result<Self> {
        self.mul(&Self::rational(factor.clone()))
    }

    /// Floating render; `None` for poles.
    pub fn to_complex(&self) -> Option<Complex64> {
        match self {
            ExactValue::Pole { .. } => None,
            ExactValue::Finite {
                coeff,
                pi_half_power,
                i_power,
            } => {
                let magnitude = coeff.to_f64()? * pi_half_pow(*pi_half_power);
                Some(if *i_power == 0 {
                    Complex64::new(magnitude, 0.0)
                } else {
                    Complex64::new(0.0, magnitude)
                })
            }
        }
    }

    /// Floating render of a real value; `None` for poles and imaginary values.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            ExactValue::Finite {
                i_power: 1, coeff, ..
            } if !coeff.is_zero() => None,
            _ => self.to_complex().map(|z| z.re),
        }
    }
}

fn pi_half_pow(e: i32) -> f64 {
    if e % 2 == 0 {
        PI.powi(e / 2)
    } else {
        PI.sqrt() * PI.powi((e - 1) / 2)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Pole { order } => write!(f, "pole(order {order})"),
            ExactValue::Finite {
                coeff,
                pi_half_power,
                i_power,
            } => {
                write!(f, "{coeff}")?;
                match pi_half_power {
                    0 => {}
                    1 => write!(f, "·√π")?,
                    2 => write!(f, "·π")?,
                    e if e % 2 == 0 => write!(f, "·π^{}", e / 2)?,
                    e => write!(f, "·π^({e}/2)")?,
                }
                if *i_power == 1 {
                    write!(f, "·i")?;
                }
                Ok(())
            }
        }
    }
}

/// Branch of `(−1)^w` for half-integer `w` inside the reflection identity.
///
/// The variant names the value taken for `(−1)^{1/2}`; the reflection factor
/// is then `(−1)^{−q} = ((−1)^{1/2})^{−2q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    PlusI,
    MinusI,
}

/// Branch used by the analytic continuation. With `(−π)^{1/2} = i√π` in the
/// negative-dimensional closed form, this is the branch that turns the
/// continued integral into `iʳ √π (−s)_{−r/2−1/2} / (2ʳ (r+1)_{−r/2})`.
pub const REFLECTION_BRANCH: Branch = Branch::MinusI;

impl Default for Branch {
    fn default() -> Self {
        REFLECTION_BRANCH
    }
}

impl Branch {
    pub fn flipped(self) -> Self {
        match self {
            Branch::PlusI => Branch::MinusI,
            Branch::MinusI => Branch::PlusI,
        }
    }

    fn i_exponent(self) -> i64 {
        match self {
            Branch::PlusI => 1,
            Branch::MinusI => 3,
        }
    }

    /// `(−1)^w` for `w` with denominator 1 or 2.
    pub fn minus_one_pow(self, w: &BigRational) -> Result<ExactValue> {
        let twice = twice_lattice(w)?;
        if twice.is_even() {
            let parity = (twice / 2i32).is_odd();
            return Ok(ExactValue::integer(if parity { -1 } else { 1 }));
        }
        let twice = (twice % 4i32).to_i64().expect("reduced mod 4");
        Ok(ExactValue::i_pow(self.i_exponent() * twice))
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus-i" | "+i" => Ok(Branch::PlusI),
            "minus-i" | "-i" => Ok(Branch::MinusI),
            other => Err(Error::Config(format!(
                "unknown branch `{other}` (expected plus-i or minus-i)"
            ))),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::PlusI => "plus-i",
            Branch::MinusI => "minus-i",
        })
    }
}

/// Argument of `Γ`, restricted to the integer and half-integer lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaArg(BigRational);

impl GammaArg {
    pub fn new(value: BigRational) -> Result<Self> {
        twice_lattice(&value)?;
        Ok(GammaArg(value))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// Non-positive integers.
    pub fn is_pole(&self) -> bool {
        self.0.is_integer() && !self.0.is_positive()
    }
}

/// `2x` as an integer, or an error if `x` is not on the half-integer lattice.
pub(crate) fn twice_lattice(x: &BigRational) -> Result<BigInt> {
    let twice = x * BigInt::from(2);
    if twice.is_integer() {
        Ok(twice.to_integer())
    } else {
        Err(Error::DenominatorUnsupported(x.to_string()))
    }
}

fn small(x: &BigInt, what: &BigRational) -> Result<i64> {
    x.to_i64().filter(|v| v.abs() <= 1_000_000).ok_or_else(|| {
        Error::InvalidSpec(format!("argument {what} too large for exact evaluation"))
    })
}

/// Exact `Γ(p)` for `p` with denominator 1 or 2.
pub fn gamma_exact(arg: &GammaArg) -> Result<ExactValue> {
    let p = arg.value();
    if arg.is_pole() {
        return Ok(ExactValue::pole(1));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if p.is_integer() {
        let n = small(&p.to_integer(), p)?;
        let fact = (1..n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        return Ok(ExactValue::rational(BigRational::from_integer(fact)));
    }
    // p = m + 1/2, stepped from Γ(1/2) = √π.
    let m = small(&(p - &half).to_integer(), p)?;
    let mut coeff = BigRational::one();
    if m >= 0 {
        for j in 0..m {
            coeff *= &half + BigRational::from_integer(BigInt::from(j));
        }
    } else {
        for j in m..0 {
            coeff /= &half + BigRational::from_integer(BigInt::from(j));
        }
    }
    Ok(ExactValue::new(coeff, 1, 0))
}

/// Pochhammer symbol `(p)_q = Γ(p+q)/Γ(p)`.
///
/// Integer `q` uses the product form, so ratios of two gamma poles cancel.
pub fn pochhammer(p: &BigRational, q: &BigRational) -> Result<ExactValue> {
    twice_lattice(p)?;
    twice_lattice(q)?;
    if q.is_integer() {
        let n = small(&q.to_integer(), q)?;
        let step = |j: i64| p + BigRational::from_integer(BigInt::from(j));
        return Ok(if n >= 0 {
            let prod = (0..n).fold(BigRational::one(), |acc, j| acc * step(j));
            ExactValue::rational(prod)
        } else {
            let prod = (1..=-n).fold(BigRational::one(), |acc, j| acc * step(-j));
            ExactValue::rational(prod).recip()
        });
    }
    let upper = gamma_exact(&GammaArg::new(p + q)?)?;
    let lower = gamma_exact(&GammaArg::new(p.clone())?)?;
    match (upper.is_pole(), lower.is_pole()) {
        (true, true) => Err(Error::IndeterminateRatio(format!(
            "Γ({})/Γ({p}) with non-integer q = {q}",
            p + q
        ))),
        (true, false) => Ok(ExactValue::pole(1)),
        (false, true) => Ok(ExactValue::zero()),
        (false, false) => upper.div(&lower),
    }
}

/// Right-hand side of the reflection identity
/// `(p)_q = (−1)^{−q} / (1−p)_{−q}`, with `(−1)^{−q}` on `branch`.
///
/// For integer `q` this agrees with [`pochhammer`] wherever both are finite.
/// For half-integer `q` it is the formal continuation used to move an
/// exponent from positive to negative values.
pub fn pochhammer_reflect(p: &BigRational, q: &BigRational, branch: Branch) -> Result<ExactValue> {
    let phase = branch.minus_one_pow(&-q)?;
    let reflected = pochhammer(&(BigRational::one() - p), &-q)?;
    phase.div(&reflected)
}
