//! Complex-valued special functions: log-gamma, sin(pi z), generalized
//! hypergeometric series with analytic continuation, and Bessel / Hankel
//! functions of complex order.
//!
//! Everything here is a pure function; NaN is never produced silently.

mod bessel;
mod gamma;
mod pfq;

pub use bessel::{bessel_j, hankel, HankelValue};
pub use gamma::{log_gamma, sin_pi, sin_pi_log};
pub use pfq::{pfq, pfq_large_z};

use num_complex::Complex64;

/// Outcome of a truncated series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    /// Partial-sum value.
    pub value: Complex64,
    /// Number of terms actually summed (>= 1).
    pub terms_used: usize,
    /// Upper estimate of the omitted tail, absolute.
    pub tail_bound: f64,
    /// True only when the stopping rule fired and the tail bound is within
    /// the requested tolerance times |value|.
    pub converged: bool,
}

impl SeriesResult {
    pub fn exact(value: Complex64) -> Self {
        SeriesResult {
            value,
            terms_used: 1,
            tail_bound: 0.0,
            converged: true,
        }
    }
}
