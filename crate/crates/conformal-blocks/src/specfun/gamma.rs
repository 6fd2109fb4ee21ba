//! Complex log-gamma (Lanczos, g = 7, nine coefficients) and sin(pi z)
//! in direct and log-scaled forms.

use crate::util::near_integer;
use crate::{Error, Result, NEAR_INTEGER_TOL};
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;

// GNU Scientific Library coefficient set for g = 7.
const LANCZOS_C: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch log-gamma.
///
/// Lanczos approximation for Re z >= 1/2, reflection otherwise. Arguments
/// within [`NEAR_INTEGER_TOL`] of a non-positive integer are poles.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::BadInput(format!("non-finite log_gamma argument {z}")));
    }
    if let Some(n) = near_integer(z, NEAR_INTEGER_TOL) {
        if n <= 0 {
            return Err(Error::PoleAt(n));
        }
    }
    if z.re >= 0.5 {
        Ok(lanczos(z))
    } else {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let ls = sin_pi_log(z);
        Ok(Complex64::new(PI.ln(), 0.0) - ls - lanczos(Complex64::new(1.0, 0.0) - z))
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// sin(pi x) and cos(pi x) for real x with exact integer zeros:
/// the argument is reduced by the nearest integer first.
fn sincos_pi_real(x: f64) -> (f64, f64) {
    let m = x.round();
    let r = x - m;
    let sign = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
    (sign * (PI * r).sin(), sign * (PI * r).cos())
}

/// sin(pi z) without catastrophic cancellation in the real direction.
///
/// Errors with [`Error::Overflow`] once cosh(pi Im z) is not representable.
pub fn sin_pi(z: Complex64) -> Result<Complex64> {
    let y = PI * z.im;
    if y.abs() > 708.0 {
        return Err(Error::Overflow(z.im.abs()));
    }
    let (s, c) = sincos_pi_real(z.re);
    Ok(Complex64::new(s * y.cosh(), c * y.sinh()))
}

/// log(sin(pi z)) on a branch suitable for exponent bookkeeping: the
/// imaginary part stays bounded as |Im z| grows. Any 2*pi*i ambiguity
/// cancels when the result is exponentiated together with log-gamma terms.
pub fn sin_pi_log(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}),  |e^{2 pi i z}| <= 1
        let w = (Complex64::new(0.0, 2.0 * PI) * z).exp();
        let one_minus = Complex64::new(1.0, 0.0) - w;
        Complex64::new(-2f64.ln(), PI / 2.0) - Complex64::new(0.0, PI) * z + one_minus.ln()
    } else {
        sin_pi_log(z.conj()).conj()
    }
}
