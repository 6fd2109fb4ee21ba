//! Generalized hypergeometric series p+1_F_p inside the unit disk, and its
//! analytic continuation to |z| > 1 through the Mellin-Barnes connection
//! formula.

use super::{log_gamma, SeriesResult};
use crate::util::{arg01, near_integer, KahanSum};
use crate::{Error, Result, NEAR_INTEGER_TOL, SERIES_TERM_CAP};
use num_complex::Complex64;
use std::f64::consts::PI;

/// How many consecutive small terms the stopping rule requires.
const STOP_RUN: usize = 3;

/// p+1_F_p(upper; lower; z) by direct summation, |z| < 1.
///
/// The stopping rule is |term| <= tol * |partial sum| for three consecutive
/// terms; the hard cap is [`SERIES_TERM_CAP`]. Hitting the cap is not an
/// error: the best estimate is returned with `converged = false` and an
/// honest tail bound.
pub fn pfq(upper: &[Complex64], lower: &[Complex64], z: Complex64, tol: f64) -> Result<SeriesResult> {
    if upper.len() != lower.len() + 1 {
        return Err(Error::BadInput(format!(
            "pfq expects p+1 upper and p lower parameters, got {} and {}",
            upper.len(),
            lower.len()
        )));
    }
    for &b in lower {
        if let Some(n) = near_integer(b, NEAR_INTEGER_TOL) {
            if n <= 0 {
                return Err(Error::LowerParamPole(b));
            }
        }
    }
    let r = z.norm();
    if r >= 1.0 {
        return Err(Error::Divergent(r));
    }
    if r == 0.0 {
        return Ok(SeriesResult::exact(Complex64::new(1.0, 0.0)));
    }

    // psi = sum(lower) - sum(upper); term ratio -> z * (1 - (1+psi)/n).
    let psi: Complex64 = lower.iter().sum::<Complex64>() - upper.iter().sum::<Complex64>();

    let mut sum = KahanSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    sum.add(term);
    let mut small_run = 0usize;
    let mut terms_used = 1usize;

    for n in 0..SERIES_TERM_CAP {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for &a in upper {
            ratio *= a + nf;
        }
        for &b in lower {
            ratio /= b + nf;
        }
        term *= ratio;
        sum.add(term);
        terms_used += 1;

        if term.norm() <= tol * sum.value().norm() {
            small_run += 1;
            if small_run >= STOP_RUN {
                break;
            }
        } else {
            small_run = 0;
        }
    }

    let value = sum.value();
    let tail = tail_bound(term.norm(), r, terms_used, psi);
    let stopped = small_run >= STOP_RUN;
    Ok(SeriesResult {
        value,
        terms_used,
        tail_bound: tail,
        converged: stopped && tail <= tol * value.norm(),
    })
}

/// Geometric tail estimate after the last computed term. The late-term
/// ratio is |z| (1 - Re(1+psi)/n + ...); when Re(1+psi) < 0 the ratio
/// approaches |z| from above, so a 1/n correction is added before the
/// geometric bound.
fn tail_bound(last: f64, r: f64, n: usize, psi: Complex64) -> f64 {
    let slack = (1.0 + (-(1.0 + psi.re)).max(0.0)) / n as f64;
    let q = (r * (1.0 + slack)).min(0.999_999);
    last * q / (1.0 - q)
}

/// p+1_F_p continued to |z| > 1 (Mellin-Barnes re-expansion): a sum over the
/// upper parameters of gamma-ratio prefactors times (e^{i pi}/z)^{a_j} and
/// an inner series in 1/z. Branch fixed by arg z in [0, 2 pi), with arg = 0
/// meaning the limit from above.
pub fn pfq_large_z(
    upper: &[Complex64],
    lower: &[Complex64],
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult> {
    if upper.len() != lower.len() + 1 {
        return Err(Error::BadInput(format!(
            "pfq_large_z expects p+1 upper and p lower parameters, got {} and {}",
            upper.len(),
            lower.len()
        )));
    }
    let r = z.norm();
    if r <= 1.0 {
        return Err(Error::Divergent(r));
    }
    for (k, &ak) in upper.iter().enumerate() {
        for (j, &aj) in upper.iter().enumerate().skip(k + 1) {
            if near_integer(ak - aj, NEAR_INTEGER_TOL).is_some() {
                return Err(Error::DegenerateParameters(k, j));
            }
        }
    }

    let log_z = Complex64::new(r.ln(), arg01(z));
    let zinv = z.finv();

    // Common prefactor prod Gamma(b_i) / prod Gamma(a_i), in log space.
    let mut log_common = Complex64::new(0.0, 0.0);
    for &b in lower {
        log_common += log_gamma(b)?;
    }
    for &a in upper {
        log_common -= log_gamma(a)?;
    }

    let mut total = KahanSum::new();
    let mut tail = 0.0;
    let mut terms_used = 0usize;
    let mut converged = true;

    for (j, &aj) in upper.iter().enumerate() {
        let mut log_coef = log_common + log_gamma(aj)?;
        for (k, &ak) in upper.iter().enumerate() {
            if k != j {
                log_coef += log_gamma(ak - aj)?;
            }
        }
        let mut vanished = false;
        for &b in lower {
            match log_gamma(b - aj) {
                Ok(lg) => log_coef -= lg,
                // A pole of a denominator gamma kills this term.
                Err(Error::PoleAt(_)) => {
                    vanished = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if vanished {
            continue;
        }

        // Inner parameters: upper {a_j, 1 + a_j - b_i}, lower {1 + a_j - a_k}.
        let mut in_upper = Vec::with_capacity(upper.len());
        in_upper.push(aj);
        for &b in lower {
            in_upper.push(aj - b + 1.0);
        }
        let mut in_lower = Vec::with_capacity(lower.len());
        for (k, &ak) in upper.iter().enumerate() {
            if k != j {
                in_lower.push(aj - ak + 1.0);
            }
        }

        let inner = pfq(&in_upper, &in_lower, zinv, tol)?;
        let power = (aj * (Complex64::new(0.0, PI) - log_z)).exp();
        let coef = log_coef.exp() * power;
        total.add(coef * inner.value);
        tail += coef.norm() * inner.tail_bound;
        terms_used = terms_used.max(inner.terms_used);
        converged &= inner.converged;
    }

    let value = total.value();
    Ok(SeriesResult {
        value,
        terms_used: terms_used.max(1),
        tail_bound: tail,
        converged: converged && tail <= tol * value.norm(),
    })
}
