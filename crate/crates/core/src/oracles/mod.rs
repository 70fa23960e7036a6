//! Independent evaluators used to cross-check the NDIM results.

pub mod corpus;
pub mod quadrature;
pub mod residue;

pub use corpus::{builtin_corpus, parse_corpus, CorpusEntry};
pub use quadrature::{
    integrate_numeric, wynn_epsilon, QuadratureRequest, QuadratureResult, Transform, DEFAULT_BUDGET,
};
pub use residue::{integrate_by_residues, residue_at, RationalIntegrand};

/// Quadrature of the real part of a rational integrand, choosing the panel
/// schedule when the integrand oscillates.
pub fn integrate_cos_projection(
    integrand: &RationalIntegrand,
    abs_tol: f64,
    rel_tol: f64,
    budget: usize,
) -> crate::Result<QuadratureResult> {
    let transform = if integrand.omega > 0.0 {
        Transform::OscillatoryPanels {
            omega: integrand.omega,
        }
    } else {
        Transform::SinhSinh
    };
    let req = QuadratureRequest::new(integrand.cos_projection(), transform)
        .tolerances(abs_tol, rel_tol)
        .budget(budget);
    integrate_numeric(&req)
}
