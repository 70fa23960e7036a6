//! Negative-dimensional integration (NDIM) of real-line integrals.
//!
//! The crate evaluates `∫ xʳ (x² + a²)ˢ dx` through the Gaussian generating
//! functional, term matching and analytic continuation of Pochhammer symbols,
//! and resums `∫ e^{ix} / (x² + a²) dx` from the continued moments. Two
//! independent oracles (a residue-theorem engine and an adaptive quadrature
//! engine) cross-check every result.
//!
//! Module map:
//!
//! * [`specfun`]: exact gamma and Pochhammer values with pole tracking.
//! * [`ndim`]: generating functional, index constraints, closed forms.
//! * [`oracles`]: residues, quadrature and the integrand corpus.
//! * [`resum`]: series reconstruction of the exponential integral.
//! * [`report`], [`identities`]: evaluation reports and identity suites
//!   consumed by the command line front end.

pub mod error;
pub mod identities;
pub mod ndim;
pub mod oracles;
pub mod report;
pub mod resum;
pub mod specfun;

pub use error::{Error, Result};
pub use ndim::{GeneratingParams, IntegralSpec, ScaledValue, SeriesIndex};
pub use oracles::{QuadratureRequest, QuadratureResult, RationalIntegrand, Transform};
pub use resum::SeriesDiagnostics;
pub use specfun::{Branch, ExactValue, REFLECTION_BRANCH};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Builds `num / den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
