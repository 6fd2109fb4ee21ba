//! Finite-difference verification of the operator identities that reduce
//! O_z^{p+1} applied to the iterated integrand to a single d/dz_p of a
//! shifted kernel.

use super::params::ParameterSet;
use crate::specfun::pfq;
use crate::util::{cauchy_derivs, poly_from_roots, stirling2};
use crate::{Error, Result};
use num_complex::Complex64;

/// Apply the order-(p+1) hypergeometric operator
/// O = d/dz prod_{i=1..p}(theta + b_i - 1) - prod_{i=0..p}(theta + a_i),
/// theta = z d/dz, to a function given by its derivatives f^(0..=p+1) at z.
///
/// Returns (O f, scale), where scale is the larger magnitude of the two
/// operator halves before cancellation.
pub fn apply_operator(
    upper: &[Complex64],
    lower: &[Complex64],
    z: Complex64,
    derivs: &[Complex64],
) -> (Complex64, f64) {
    let p = lower.len();
    assert_eq!(upper.len(), p + 1);
    assert!(derivs.len() >= p + 2);

    let one = Complex64::new(1.0, 0.0);
    let p_coeffs = poly_from_roots(&lower.iter().map(|&b| b - one).collect::<Vec<_>>());
    let q_coeffs = poly_from_roots(upper);
    let s2 = stirling2(p + 1);

    // d/dz prod(theta + b_i - 1) = prod(theta + b_i) d/dz, so shift the
    // polynomial argument by one before applying it to f'.
    let mut p_shift = vec![Complex64::new(0.0, 0.0); p + 1];
    for (k, &pk) in p_coeffs.iter().enumerate() {
        // (theta+1)^k = sum_j C(k,j) theta^j
        let mut binom = 1.0f64;
        for j in 0..=k {
            p_shift[j] += pk * binom;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }

    let theta_pow = |m: usize, base: usize| -> Complex64 {
        // theta^m applied to f^(base-th derivative stream): sum_r S(m,r) z^r f^{(base+r)}
        if m == 0 {
            return derivs[base];
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zr = one;
        for r in 1..=m {
            zr *= z;
            acc += s2[m][r] * zr * derivs[base + r];
        }
        acc
    };

    let mut first = Complex64::new(0.0, 0.0);
    for (j, &c) in p_shift.iter().enumerate() {
        first += c * theta_pow(j, 1);
    }
    let mut second = Complex64::new(0.0, 0.0);
    for (k, &c) in q_coeffs.iter().enumerate() {
        second += c * theta_pow(k, 0);
    }
    (first - second, first.norm().max(second.norm()))
}

/// The single-sided inner solution u_j(a0, a, b; w) with principal-branch
/// powers (the grids used here stay near the positive real axis, where the
/// principal branch is the continuous one).
fn u_inner(
    a0: Complex64,
    a: &[Complex64],
    b: &[Complex64],
    j: usize,
    w: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if j == 0 {
        let mut upper = vec![a0];
        upper.extend_from_slice(a);
        Ok(pfq(&upper, b, w, tol)?.value)
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
        Ok(w.powc(one - bj) * pfq(&upper, &lower, w, tol)?.value)
    }
}

/// Worst relative residual of the operator identity over a (z, z_p) grid.
///
/// j = 0 uses the plain kernel, 1 <= j <= p-1 the shifted one; in both
/// cases the right side is -prod_i(...) d/dz_p of the (a+1)-shifted kernel.
/// Derivatives come from the 5-point circle stencils of
/// [`cauchy_derivs`]; the identity is exact, so the returned number is pure
/// discretization error.
pub fn lemma4_residual(
    ps: &ParameterSet,
    j: usize,
    zs: &[Complex64],
    zps: &[Complex64],
    tol: f64,
) -> Result<f64> {
    let p = ps.p;
    if p < 1 || p > 2 {
        return Err(Error::BadInput(
            "lemma4_residual supports p in {1, 2} (derivative order p+1 <= 3)".into(),
        ));
    }
    if j >= p {
        return Err(Error::BadInput(format!(
            "lemma4_residual needs j in 0..=p-1; got j = {j} at p = {p}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let (ap, bp) = (ps.a[p - 1], ps.b[p - 1]);
    let a_in: Vec<Complex64> = ps.a[..p - 1].to_vec();
    let b_in: Vec<Complex64> = ps.b[..p - 1].to_vec();
    let a_in_shift: Vec<Complex64> = a_in.iter().map(|&x| x + one).collect();

    // O_z uses the FULL parameter lists.
    let mut upper_full = vec![ps.a0];
    upper_full.extend_from_slice(&ps.a);
    let lower_full = ps.b.clone();

    // -prod_{i=0}^{p-1}(a_i) for j = 0; -prod(a_i - b_j + 1) for j >= 1.
    let mut factor = -one;
    for i in 0..p {
        let ai = ps.av(i);
        factor *= if j == 0 { ai } else { ai - ps.bv(j) + one };
    }

    let h_fun = |z: Complex64, zp: Complex64| -> Result<Complex64> {
        let pw = zp.powc(ap - one) * (one - zp).powc(bp - ap - one);
        Ok(pw * u_inner(ps.a0, &a_in, &b_in, j, z * zp, tol)?)
    };
    let k_fun = |z: Complex64, zp: Complex64| -> Result<Complex64> {
        let pw = zp.powc(ap) * (one - zp).powc(bp - ap);
        Ok(pw * u_inner(ps.a0 + one, &a_in_shift, &b_in, j, z * zp, tol)?)
    };

    let mut worst = 0.0f64;
    for &z in zs {
        for &zp in zps {
            let margin = z
                .norm()
                .min((z * zp).norm())
                .min(zp.norm())
                .min((one - zp).norm())
                .min((one - z * zp).norm());
            let h = 0.2 * margin;

            let residual_at = |h: f64| -> Result<(Complex64, f64)> {
                let dz = cauchy_derivs(|w| h_fun(w, zp).unwrap(), z, h, p + 1);
                let (lhs, scale) = apply_operator(&upper_full, &lower_full, z, &dz);
                let dk = cauchy_derivs(|w| k_fun(z, w).unwrap(), zp, h, 1);
                let rhs = factor * dk[1];
                Ok((lhs - rhs, scale.max(rhs.norm())))
            };

            let (r_coarse, _) = residual_at(h)?;
            let (r_fine, scale) = residual_at(0.5 * h)?;
            let rel = r_fine.norm() / scale.max(1e-300);
            let fd_wobble = (r_coarse - r_fine).norm() / scale.max(1e-300);
            if fd_wobble > 10.0 * rel.max(tol) {
                return Err(Error::StepTooLarge {
                    fd: fd_wobble,
                    residual: rel,
                });
            }
            worst = worst.max(rel);
        }
    }
    Ok(worst)
}
