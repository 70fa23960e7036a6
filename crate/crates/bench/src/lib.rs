//! Fixed inputs shared by the benchmarks.

use ndim_core::{ratio, BigRational, RationalIntegrand};

pub const SCALES: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

/// `(p, q)` pairs with half-integer `p` and integer `q`, all off the pole set.
pub fn pochhammer_inputs() -> Vec<(BigRational, BigRational)> {
    (-9..=9)
        .map(|n| (ratio(2 * n + 1, 2), ratio(n.rem_euclid(7) - 3, 1)))
        .collect()
}

/// A third-order pole at `i` with a simple pair at `±1 + 2i`.
pub fn mixed_integrand(omega: f64) -> RationalIntegrand {
    use ndim_core::Complex64;
    RationalIntegrand::new(
        vec![1.0, 0.0, 1.0],
        vec![
            (Complex64::new(0.0, 1.0), 3),
            (Complex64::new(1.0, 2.0), 1),
            (Complex64::new(-1.0, 2.0), 1),
        ],
        omega,
    )
    .expect("valid integrand")
}
