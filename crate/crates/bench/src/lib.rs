//! Shared fixtures for the kernel benchmarks.

use num_complex::Complex64;
use scarf2_core::{OverlapSpec, Result};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Log-gamma arguments spread over the right and left half planes.
pub fn gamma_points() -> Vec<Complex64> {
    (0..64)
        .map(|k| {
            let t = k as f64 / 8.0;
            c(-7.3 + 1.7 * t, 3.0 * (t - 4.0).sin())
        })
        .collect()
}

/// Overlap spec for the PT product of two states with complex alpha.
pub fn pt_spec(n: usize, l: usize) -> Result<OverlapSpec> {
    let alpha = c(-4.5, 0.3);
    let beta = c(-5.2, 0.0);
    OverlapSpec::new(alpha, beta, beta, alpha.conj(), n, l)
}

/// Integrand with slow algebraic-exponential decay, close to a threshold state.
pub fn slow_tail(x: f64) -> Complex64 {
    let z = c(0.0, x.sinh());
    (1.0 - z).powc(c(-0.6, 0.2)) * (1.0 + z).powc(c(-0.6, -0.2))
}
