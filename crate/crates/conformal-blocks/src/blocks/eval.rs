//! Block-basis solutions and evaluation of the p-uple integral on both
//! sides of |z| = 1.

use super::coeffs::{lambda_coeffs, large_z_coeffs};
use super::params::ParameterSet;
use crate::specfun::{pfq, SeriesResult};
use crate::util::{arg01, near_integer, pair_pow, pow_arg01};
use crate::{Error, Result, NEAR_DEGENERATE_WARN};
use num_complex::Complex64;

/// Value of a block sum together with its honest error accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockValue {
    pub value: Complex64,
    /// Combined absolute tail estimate of all inner series.
    pub tail_bound: f64,
    /// Every inner series satisfied its stopping rule within tolerance.
    pub converged: bool,
    /// Some b_i - b_j was within 1e-6 of an integer: coefficients are close
    /// to blowing up, error bars widened (tail doubled), value still usable.
    pub near_degenerate: bool,
}

/// Upper/lower parameter lists of the small-z solution u_j (Eq.-7 shape):
/// j = 0 gives (a_0, a; b); j >= 1 shifts everything by 1 - b_j.
fn small_params(
    a0: Complex64,
    a: &[Complex64],
    b: &[Complex64],
    j: usize,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let one = Complex64::new(1.0, 0.0);
    if j == 0 {
        let mut upper = vec![a0];
        upper.extend_from_slice(a);
        (upper, b.to_vec())
    } else {
        let bj = b[j - 1];
        let mut upper = vec![a0 - bj + one];
        upper.extend(a.iter().map(|&ai| ai - bj + one));
        let mut lower: Vec<Complex64> = b
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j - 1)
            .map(|(_, &bi)| bi - bj + one)
            .collect();
        lower.push(2.0 * one - bj);
        (upper, lower)
    }
}

/// Single-sided solution u_j with an explicit phase for the prefactor
/// z^{1-b_j} = exp((1-b_j)(ln r + i theta)).
fn u_with_phase(
    a0: Complex64,
    a: &[Complex64],
    b: &[Complex64],
    j: usize,
    z: Complex64,
    theta: f64,
    tol: f64,
) -> Result<SeriesResult> {
    let (upper, lower) = small_params(a0, a, b, j);
    let series = pfq(&upper, &lower, z, tol)?;
    if j == 0 {
        return Ok(series);
    }
    let one = Complex64::new(1.0, 0.0);
    let pre = pair_pow(z.norm(), theta, one - b[j - 1], Complex64::new(0.0, 0.0));
    Ok(SeriesResult {
        value: pre * series.value,
        tail_bound: pre.norm() * series.tail_bound,
        ..series
    })
}

/// The j-th independent small-z solution u_j^{p+1}(a_0, a^p, b^p, z):
/// u_0 = p+1F_p(a_0, a; b; z) and u_j = z^{1-b_j} p+1F_p(shifted; z) with
/// the global arg z in [0, 2 pi) branch.
pub fn block_solution(ps: &ParameterSet, j: usize, z: Complex64, tol: f64) -> Result<SeriesResult> {
    if j > ps.p {
        return Err(Error::BadInput(format!("block index {j} out of range 0..={}", ps.p)));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Divergent(z.norm()));
    }
    u_with_phase(ps.a0, &ps.a, &ps.b, j, z, arg01(z), tol)
}

fn near_degenerate_b(ps: &ParameterSet) -> bool {
    for i in 1..=ps.p {
        for j in (i + 1)..=ps.p {
            let d = ps.bv(i) - ps.bv(j);
            let dist = crate::util::dist_to_integer(d);
            if dist < NEAR_DEGENERATE_WARN {
                return true;
            }
        }
    }
    false
}

/// Small-z block sum with an explicitly tracked z-phase: theta is any
/// continuous determination of arg z (advance it by 2 pi to test
/// monodromy). zbar is paired with phase -theta.
pub fn evaluate_small_z_with_phase(
    ps: &ParameterSet,
    z: Complex64,
    theta: f64,
    tol: f64,
) -> Result<BlockValue> {
    let r = z.norm();
    if r == 0.0 || r >= 1.0 {
        return Err(Error::BadInput(format!(
            "evaluate_small_z needs 0 < |z| < 1, got |z| = {r}"
        )));
    }
    let lambda = lambda_coeffs(ps)?.coeffs;
    let zb = z.conj();
    let one = Complex64::new(1.0, 0.0);

    let mut value = Complex64::new(0.0, 0.0);
    let mut tail = 0.0f64;
    let mut converged = true;
    for j in 0..=ps.p {
        let hol = {
            let (upper, lower) = small_params(ps.a0, &ps.a, &ps.b, j);
            pfq(&upper, &lower, z, tol)?
        };
        let anti = {
            let (upper, lower) = small_params(ps.a0_t, &ps.a_t, &ps.b_t, j);
            pfq(&upper, &lower, zb, tol)?
        };
        let pre = if j == 0 {
            one
        } else {
            pair_pow(r, theta, one - ps.bv(j), one - ps.bt(j))
        };
        let term = lambda[j] * pre * hol.value * anti.value;
        value += term;
        let scale = lambda[j].norm() * pre.norm();
        tail += scale
            * (hol.tail_bound * anti.value.norm()
                + anti.tail_bound * hol.value.norm()
                + hol.tail_bound * anti.tail_bound);
        converged &= hol.converged && anti.converged;
    }

    let near_degenerate = near_degenerate_b(ps);
    if near_degenerate {
        tail *= 2.0;
    }
    Ok(BlockValue {
        value,
        tail_bound: tail,
        converged,
        near_degenerate,
    })
}

/// Evaluate I_{p+1}(z, zbar) for 0 < |z| < 1 through the small-z block sum.
///
/// z on the cut [0, 1) is refused: the decomposition's branches collide
/// there. The oracle accepts real z as a limit from above instead.
pub fn evaluate_small_z(ps: &ParameterSet, z: Complex64, tol: f64) -> Result<BlockValue> {
    if z.im == 0.0 && z.re >= 0.0 && z.re < 1.0 {
        return Err(Error::OnCut(z));
    }
    evaluate_small_z_with_phase(ps, z, arg01(z), tol)
}

/// Small-z block sum with z and zbar treated as independent complex
/// arguments (principal-branch powers). This is what the annihilation
/// tests differentiate: for fixed zbar the result is a holomorphic
/// function of z solving the order-(p+1) equation in z.
pub fn evaluate_small_z_split(
    ps: &ParameterSet,
    z: Complex64,
    zbar: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let lambda = lambda_coeffs(ps)?.coeffs;
    let one = Complex64::new(1.0, 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    for j in 0..=ps.p {
        let hol = {
            let (upper, lower) = small_params(ps.a0, &ps.a, &ps.b, j);
            pfq(&upper, &lower, z, tol)?
        };
        let anti = {
            let (upper, lower) = small_params(ps.a0_t, &ps.a_t, &ps.b_t, j);
            pfq(&upper, &lower, zbar, tol)?
        };
        let pre = if j == 0 {
            one
        } else {
            z.powc(one - ps.bv(j)) * zbar.powc(one - ps.bt(j))
        };
        value += lambda[j] * pre * hol.value * anti.value;
    }
    Ok(value)
}

/// Parameter lists of the large-z inner series for block j:
/// upper {a_j, a_j - b_i + 1}, lower {1 + a_j - a_l (l != j)}.
fn large_params(
    a0: Complex64,
    a: &[Complex64],
    b: &[Complex64],
    j: usize,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let one = Complex64::new(1.0, 0.0);
    let p = a.len();
    let av = |i: usize| if i == 0 { a0 } else { a[i - 1] };
    let aj = av(j);
    let mut upper = vec![aj];
    upper.extend(b.iter().map(|&bi| aj - bi + one));
    let mut lower = Vec::with_capacity(p);
    for l in 0..=p {
        if l != j {
            lower.push(one + aj - av(l));
        }
    }
    (upper, lower)
}

/// Large-z block sum with explicit phase (mirror of
/// [`evaluate_small_z_with_phase`]).
pub fn evaluate_large_z_with_phase(
    ps: &ParameterSet,
    z: Complex64,
    theta: f64,
    tol: f64,
) -> Result<BlockValue> {
    let r = z.norm();
    if r <= 1.0 {
        return Err(Error::BadInput(format!(
            "evaluate_large_z needs |z| > 1, got |z| = {r}"
        )));
    }
    let jdiag = large_z_coeffs(ps)?.coeffs;
    let zinv = z.finv();
    let zbinv = z.conj().finv();

    let mut value = Complex64::new(0.0, 0.0);
    let mut tail = 0.0f64;
    let mut converged = true;
    for j in 0..=ps.p {
        let hol = {
            let (upper, lower) = large_params(ps.a0, &ps.a, &ps.b, j);
            pfq(&upper, &lower, zinv, tol)?
        };
        let anti = {
            let (upper, lower) = large_params(ps.a0_t, &ps.a_t, &ps.b_t, j);
            pfq(&upper, &lower, zbinv, tol)?
        };
        // e^{i pi (a_j - a~_j)} with the difference rounded to its exact
        // integer value.
        let phase = {
            let m = near_integer(ps.av(j) - ps.at(j), 1e-6).ok_or_else(|| {
                Error::ConditionC(format!("a[{j}] - a~[{j}] is not an integer"))
            })?;
            if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
        };
        let pre = pair_pow(r, theta, -ps.av(j), -ps.at(j)) * phase;
        value += jdiag[j] * pre * hol.value * anti.value;
        let scale = jdiag[j].norm() * pre.norm();
        tail += scale
            * (hol.tail_bound * anti.value.norm()
                + anti.tail_bound * hol.value.norm()
                + hol.tail_bound * anti.tail_bound);
        converged &= hol.converged && anti.converged;
    }

    let near_degenerate = near_degenerate_b(ps);
    if near_degenerate {
        tail *= 2.0;
    }
    Ok(BlockValue {
        value,
        tail_bound: tail,
        converged,
        near_degenerate,
    })
}

/// Evaluate I_{p+1}(z, zbar) for |z| > 1 through the large-z connection
/// sum. arg z = 0 is taken as the limit from above.
pub fn evaluate_large_z(ps: &ParameterSet, z: Complex64, tol: f64) -> Result<BlockValue> {
    evaluate_large_z_with_phase(ps, z, arg01(z), tol)
}

/// Single-sided large-z solution z^{-a_j} F_j(1/z) (used by tests and the
/// boundary-value machinery), arg z in [0, 2 pi).
pub fn large_solution(ps: &ParameterSet, j: usize, z: Complex64, tol: f64) -> Result<SeriesResult> {
    if z.norm() <= 1.0 {
        return Err(Error::Divergent(z.norm()));
    }
    let (upper, lower) = large_params(ps.a0, &ps.a, &ps.b, j);
    let series = pfq(&upper, &lower, z.finv(), tol)?;
    let pre = pow_arg01(z, -ps.av(j));
    Ok(SeriesResult {
        value: pre * series.value,
        tail_bound: pre.norm() * series.tail_bound,
        ..series
    })
}
