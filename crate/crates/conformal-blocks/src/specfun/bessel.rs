//! Bessel J and Hankel functions of complex order by ascending series.

use super::{log_gamma, sin_pi, SeriesResult};
use crate::util::{dist_to_integer, KahanSum};
use crate::{Error, Result, SERIES_TERM_CAP};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Below this distance from an integer order, the Hankel combination is
/// evaluated by symmetric perturbation instead of directly.
const HANKEL_PERTURB_BAND: f64 = 1e-6;
/// Size of the symmetric perturbation.
const HANKEL_PERTURB: f64 = 1e-5;

/// J_nu(z) by the ascending series
/// sum_k (-1)^k (z/2)^{nu+2k} / (k! Gamma(nu+k+1)), principal branch of
/// (z/2)^nu.
///
/// The asymptotic (large |z|) regime is out of scope; once the series needs
/// more than [`SERIES_TERM_CAP`] terms the call fails with
/// [`Error::TruncationCapHit`].
pub fn bessel_j(nu: Complex64, z: Complex64, tol: f64) -> Result<SeriesResult> {
    if z.norm() == 0.0 {
        return Err(Error::BadInput(
            "bessel_j requires z != 0; take the limit outside".into(),
        ));
    }
    // 1/Gamma(nu+k+1) never pole-cancels for the orders we admit; a negative
    // near-integer order would zero early denominators instead.
    if dist_to_integer(nu) < 1e-9 && nu.re < -0.5 {
        return Err(Error::BadInput(format!(
            "bessel_j order {nu} is within tolerance of a negative integer"
        )));
    }
    let half = 0.5 * z;
    let prefactor = (nu * half.ln() - log_gamma(nu + 1.0)?).exp();
    let q = -half * half;

    let mut sum = KahanSum::new();
    let mut term = prefactor;
    sum.add(term);
    let mut terms_used = 1usize;
    let mut small_run = 0usize;
    for k in 0..SERIES_TERM_CAP {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (nu + kf + 1.0));
        sum.add(term);
        terms_used += 1;
        if term.norm() <= tol * sum.value().norm() {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if small_run < 3 {
        return Err(Error::TruncationCapHit {
            terms: terms_used,
            tail: term.norm(),
        });
    }
    let value = sum.value();
    let tail = term.norm();
    Ok(SeriesResult {
        value,
        terms_used,
        tail_bound: tail,
        converged: tail <= tol * value.norm(),
    })
}

/// Hankel function value plus a flag recording whether the near-integer
/// perturbation path was taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelValue {
    pub value: Complex64,
    /// True when the order was within the perturbation band of an integer
    /// and the value is a symmetric-perturbation extrapolation (diagnostic
    /// path: integer orders are excluded by the supported theorems).
    pub near_integer_order: bool,
}

/// H^(1)_nu or H^(2)_nu from the defining J_{+-nu} combinations.
pub fn hankel(kind: u8, nu: Complex64, z: Complex64, tol: f64) -> Result<HankelValue> {
    if kind != 1 && kind != 2 {
        return Err(Error::BadInput(format!("hankel kind must be 1 or 2, got {kind}")));
    }
    if z.norm() == 0.0 {
        return Err(Error::BadInput("hankel requires z != 0".into()));
    }
    if dist_to_integer(nu) < HANKEL_PERTURB_BAND {
        // 0/0 at integer order; evaluate symmetrically on both sides and
        // average (Richardson: the even error term cancels).
        let d = Complex64::new(HANKEL_PERTURB, 0.0);
        let plus = hankel_direct(kind, nu + d, z, tol)?;
        let minus = hankel_direct(kind, nu - d, z, tol)?;
        return Ok(HankelValue {
            value: 0.5 * (plus + minus),
            near_integer_order: true,
        });
    }
    Ok(HankelValue {
        value: hankel_direct(kind, nu, z, tol)?,
        near_integer_order: false,
    })
}

fn hankel_direct(kind: u8, nu: Complex64, z: Complex64, tol: f64) -> Result<Complex64> {
    let jp = bessel_j(nu, z, tol)?.value;
    let jm = bessel_j(-nu, z, tol)?.value;
    let s = sin_pi(nu)?;
    let i = Complex64::new(0.0, 1.0);
    let phase = (i * PI * nu).exp();
    let value = match kind {
        1 => (jm - jp / phase) / (i * s),
        _ => (phase * jp - jm) / (i * s),
    };
    Ok(value)
}
