use thiserror::Error;

/// Errors raised anywhere in the evaluation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma argument {0} has a denominator other than 1 or 2")]
    DenominatorUnsupported(String),

    #[error("indeterminate ratio: {0}")]
    IndeterminateRatio(String),

    #[error("cannot add values with different pi or i powers: {0} + {1}")]
    MixedPowers(String, String),

    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(f64),

    #[error("(r = {r}, s = {s}) has no preimage under the index constraints")]
    NoPreimage { r: i64, s: String },

    #[error("polynomial integral needs n >= 0, got {0}")]
    NegativeN(i64),

    #[error("invalid integral parameters: {0}")]
    InvalidSpec(String),

    #[error("root {0} is not one of the integrand's upper half-plane roots")]
    RootNotListed(String),

    #[error("denominator degree {denominator} too small for numerator degree {numerator} at omega = {omega}")]
    DegreeConditionViolated {
        numerator: usize,
        denominator: usize,
        omega: f64,
    },

    #[error("root {0} lies on the real axis")]
    RealAxisRoot(String),

    #[error("invalid integrand: {0}")]
    InvalidIntegrand(String),

    #[error("tolerance not reached after {evaluations} evaluations (estimate {estimate}, error {error})")]
    ToleranceNotReached {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("integrand returned a non-finite value at x = {0}")]
    NonFiniteSample(f64),

    #[error("series did not converge within {terms} terms (last term {last_term:e})")]
    NotConverged { terms: usize, last_term: f64 },

    #[error("corpus line {line}: {message}")]
    CorpusParse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{method} failed: {source}")]
    MethodFailure {
        method: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
