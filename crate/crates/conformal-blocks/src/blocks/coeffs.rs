//! Block coefficients: the generalized Euler function, the small-z lambda
//! coefficients, the large-z diagonal connection coefficients, and the
//! factorized mu / nu coefficient families of the renormalized bases.
//!
//! Every product of gammas is assembled in log space (log-gamma plus
//! log-sine plus exact integer phases) so that coefficients stay
//! representable for p up to 5.

use super::params::ParameterSet;
use crate::specfun::{log_gamma, sin_pi_log};
use crate::util::near_integer;
use crate::{Error, Result, NEAR_INTEGER_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which solution basis a coefficient vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// Small-z basis u_j(z) u~_j(zbar), coefficients lambda_j.
    SmallZU,
    /// Large-z basis z^{-a_j} zbar^{-a~_j} F_j(1/z) F~_j(1/zbar),
    /// coefficients J_jj (or nu_j on the renormalized W basis).
    LargeZW,
    /// Renormalized G-function basis V_j, coefficients mu_{p+1} * mu_j.
    GBasisV,
}

/// A basis tag plus the p+1 complex coefficients of the block sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub basis: Basis,
    pub coeffs: Vec<Complex64>,
    pub params: ParameterSet,
}

/// (-1)^k for an exact integer k.
fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Integer-rounded phase (-1)^z for a difference that Condition C forces to
/// be an exact integer. Floating noise must not leak into a complex power,
/// so the difference is rounded first.
fn parity_of(z: Complex64, what: &str) -> Result<f64> {
    let n = near_integer(z, 1e-6)
        .ok_or_else(|| Error::ConditionC(format!("{what} = {z} is not an integer")))?;
    Ok(parity(n))
}

/// log of the generalized Euler function B_{alpha,beta;alpha~,beta~}.
///
/// B = Gamma(a)Gamma(b)/Gamma(a+b) * Gamma(a~)Gamma(b~)/Gamma(a~+b~)
///     * sin(pi a~) sin(pi b~) / sin(pi(a~+b~)).
pub fn log_generalized_beta(
    alpha: Complex64,
    beta: Complex64,
    alpha_t: Complex64,
    beta_t: Complex64,
) -> Result<Complex64> {
    if near_integer(alpha - alpha_t, NEAR_INTEGER_TOL).is_none() {
        return Err(Error::NonIntegerDifference(alpha, alpha_t));
    }
    if near_integer(beta - beta_t, NEAR_INTEGER_TOL).is_none() {
        return Err(Error::NonIntegerDifference(beta, beta_t));
    }
    if near_integer(alpha_t + beta_t, NEAR_INTEGER_TOL).is_some() {
        return Err(Error::SineZero(alpha_t + beta_t));
    }
    let lg = |z: Complex64| -> Result<Complex64> {
        log_gamma(z).map_err(|e| match e {
            Error::PoleAt(_) => Error::GammaPole(z),
            other => other,
        })
    };
    Ok(lg(alpha)? + lg(beta)? - lg(alpha + beta)?
        + lg(alpha_t)?
        + lg(beta_t)?
        - lg(alpha_t + beta_t)?
        + sin_pi_log(alpha_t)
        + sin_pi_log(beta_t)
        - sin_pi_log(alpha_t + beta_t))
}

/// The generalized Euler function itself.
pub fn generalized_beta(
    alpha: Complex64,
    beta: Complex64,
    alpha_t: Complex64,
    beta_t: Complex64,
) -> Result<Complex64> {
    Ok(log_generalized_beta(alpha, beta, alpha_t, beta_t)?.exp())
}

/// Small-z coefficients lambda_0..lambda_p.
///
/// lambda_0 = prod_i B_{a_i, b_i-a_i; a~_i, b~_i-a~_i};
/// lambda_j = (-1)^{b_j-b~_j-a_j+a~_j} B_{b_j-1, 1-a0; b~_j-1, 1-a~0}
///            * prod_{i != j} B_{a_i-b_j+1, b_i-a_i; a~_i-b~_j+1, b~_i-a~_i}.
pub fn lambda_coeffs(ps: &ParameterSet) -> Result<BlockDecomposition> {
    ps.require_condition_c()?;
    let p = ps.p;
    let mut coeffs = Vec::with_capacity(p + 1);

    let mut log0 = Complex64::new(0.0, 0.0);
    for i in 1..=p {
        log0 += log_generalized_beta(
            ps.av(i),
            ps.bv(i) - ps.av(i),
            ps.at(i),
            ps.bt(i) - ps.at(i),
        )?;
    }
    coeffs.push(log0.exp());

    let one = Complex64::new(1.0, 0.0);
    for j in 1..=p {
        let sign = parity_of(
            ps.bv(j) - ps.bt(j) - ps.av(j) + ps.at(j),
            &format!("b[{j}]-b~[{j}]-a[{j}]+a~[{j}]"),
        )?;
        let mut log = log_generalized_beta(
            ps.bv(j) - one,
            one - ps.a0,
            ps.bt(j) - one,
            one - ps.a0_t,
        )?;
        for i in 1..=p {
            if i != j {
                log += log_generalized_beta(
                    ps.av(i) - ps.bv(j) + one,
                    ps.bv(i) - ps.av(i),
                    ps.at(i) - ps.bt(j) + one,
                    ps.bt(i) - ps.at(i),
                )?;
            }
        }
        coeffs.push(sign * log.exp());
    }

    Ok(BlockDecomposition {
        basis: Basis::SmallZU,
        coeffs,
        params: ps.clone(),
    })
}

/// Large-z diagonal coefficients J_00..J_pp.
///
/// J_00 = prod_{i=1..p} B_{b_i-a_i, a_i-a0; b~_i-a~_i, a~_i-a~0};
/// J_jj = B_{a_j, a0-a_j; a~_j, a~0-a~_j}
///        * prod_{i=1..p, i != j} B_{b_i-a_i, a_i-a_j; b~_i-a~_i, a~_i-a~_j}.
///
/// The j-range convention (and the absence of any extra sine prefactor on
/// the j != 0 entries) is pinned by the off-diagonal-cancellation test
/// against the connection-formula assembly.
pub fn large_z_coeffs(ps: &ParameterSet) -> Result<BlockDecomposition> {
    ps.require_condition_c()?;
    let p = ps.p;
    let mut coeffs = Vec::with_capacity(p + 1);

    let mut log0 = Complex64::new(0.0, 0.0);
    for i in 1..=p {
        log0 += log_generalized_beta(
            ps.bv(i) - ps.av(i),
            ps.av(i) - ps.a0,
            ps.bt(i) - ps.at(i),
            ps.at(i) - ps.a0_t,
        )?;
    }
    coeffs.push(log0.exp());

    for j in 1..=p {
        let mut log = log_generalized_beta(
            ps.av(j),
            ps.a0 - ps.av(j),
            ps.at(j),
            ps.a0_t - ps.at(j),
        )?;
        for i in 1..=p {
            if i != j {
                log += log_generalized_beta(
                    ps.bv(i) - ps.av(i),
                    ps.av(i) - ps.av(j),
                    ps.bt(i) - ps.at(i),
                    ps.at(i) - ps.at(j),
                )?;
            }
        }
        coeffs.push(log.exp());
    }

    Ok(BlockDecomposition {
        basis: Basis::LargeZW,
        coeffs,
        params: ps.clone(),
    })
}

/// exp(sum of log-sines) of `prod_i sin(pi x_i)`.
fn sin_product(xs: &[Complex64]) -> Complex64 {
    xs.iter()
        .map(|&x| sin_pi_log(x))
        .sum::<Complex64>()
        .exp()
}

/// The scalar mu_{p+1} = (1/pi^2) (-1)^{a0-a~0}
/// prod_{i=0..p} Gamma(b_i-a_i) Gamma(b~_i-a~_i) sin(pi(b_i-a_i)),
/// with b_0 = b~_0 = 1.
pub fn mu_top(ps: &ParameterSet) -> Result<Complex64> {
    let sign = parity_of(ps.a0 - ps.a0_t, "a0-a~0")?;
    let mut log = Complex64::new(-2.0 * PI.ln(), 0.0);
    for i in 0..=ps.p {
        log += log_gamma(ps.bv(i) - ps.av(i))?;
        log += log_gamma(ps.bt(i) - ps.at(i))?;
        log += sin_pi_log(ps.bv(i) - ps.av(i));
    }
    Ok(sign * log.exp())
}

/// G-basis coefficients: coeffs[j] = mu_{p+1} * mu_j with
/// mu_j = prod_{i=0..p} S(b_j-a_i) / prod_{i=0..p, i != j} S(b_j-b_i),
/// b_0 = 1. The full block sum is sum_j coeffs[j] V_j(z) V~_j(zbar).
pub fn g_basis_coeffs(ps: &ParameterSet) -> Result<BlockDecomposition> {
    ps.require_condition_c()?;
    let top = mu_top(ps)?;
    let p = ps.p;
    let mut coeffs = Vec::with_capacity(p + 1);
    for j in 0..=p {
        let num: Vec<Complex64> = (0..=p).map(|i| ps.bv(j) - ps.av(i)).collect();
        let den: Vec<Complex64> = (0..=p)
            .filter(|&i| i != j)
            .map(|i| ps.bv(j) - ps.bv(i))
            .collect();
        coeffs.push(top * sin_product(&num) / sin_product(&den));
    }
    Ok(BlockDecomposition {
        basis: Basis::GBasisV,
        coeffs,
        params: ps.clone(),
    })
}

/// W-basis coefficients nu_j = (-1)^{s-s~} mu_{p+1}
/// prod_{i=0..p} S(b_i-a_j) / prod_{i=0..p, i != j} S(a_i-a_j), b_0 = 1.
///
/// This is mu_j with the roles of a and b interchanged, up to the
/// (-1)^{s-s~} sign, exactly as the z -> 1/z symmetry demands.
pub fn nu_coeffs(ps: &ParameterSet) -> Result<BlockDecomposition> {
    ps.require_condition_c()?;
    let top = mu_top(ps)?;
    let sign = parity_of(ps.psi() - ps.psi_t(), "s-s~")?;
    let p = ps.p;
    let mut coeffs = Vec::with_capacity(p + 1);
    for j in 0..=p {
        let num: Vec<Complex64> = (0..=p).map(|i| ps.bv(i) - ps.av(j)).collect();
        let den: Vec<Complex64> = (0..=p)
            .filter(|&i| i != j)
            .map(|i| ps.av(i) - ps.av(j))
            .collect();
        coeffs.push(sign * top * sin_product(&num) / sin_product(&den));
    }
    Ok(BlockDecomposition {
        basis: Basis::LargeZW,
        coeffs,
        params: ps.clone(),
    })
}

/// G-renormalization of the small-z basis: V_j = v_norm(j) * u_j, i.e.
/// prod_{i=0..p} Gamma(a_i-b_j+1) / prod_{k=0..p, k != j} Gamma(b_k-b_j+1).
pub fn v_norm(ps: &ParameterSet, j: usize, tilded: bool) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let (av, bv): (Vec<Complex64>, Vec<Complex64>) = if tilded {
        ((0..=ps.p).map(|i| ps.at(i)).collect(), (0..=ps.p).map(|i| ps.bt(i)).collect())
    } else {
        ((0..=ps.p).map(|i| ps.av(i)).collect(), (0..=ps.p).map(|i| ps.bv(i)).collect())
    };
    let mut log = Complex64::new(0.0, 0.0);
    for i in 0..=ps.p {
        log += log_gamma(av[i] - bv[j] + one)?;
    }
    for k in 0..=ps.p {
        if k != j {
            log -= log_gamma(bv[k] - bv[j] + one)?;
        }
    }
    Ok(log.exp())
}

/// G-renormalization of the large-z basis: W_j = w_norm(j) * z^{-a_j} F_j(1/z),
/// i.e. prod_{i=0..p} Gamma(a_j-b_i+1) / prod_{i != j} Gamma(a_j-a_i+1),
/// b_0 = 1 (the i = 0 factor of the numerator is Gamma(a_j)).
pub fn w_norm(ps: &ParameterSet, j: usize, tilded: bool) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let (av, bv): (Vec<Complex64>, Vec<Complex64>) = if tilded {
        ((0..=ps.p).map(|i| ps.at(i)).collect(), (0..=ps.p).map(|i| ps.bt(i)).collect())
    } else {
        ((0..=ps.p).map(|i| ps.av(i)).collect(), (0..=ps.p).map(|i| ps.bv(i)).collect())
    };
    let mut log = Complex64::new(0.0, 0.0);
    for i in 0..=ps.p {
        log += log_gamma(av[j] - bv[i] + one)?;
    }
    for i in 0..=ps.p {
        if i != j {
            log -= log_gamma(av[j] - av[i] + one)?;
        }
    }
    Ok(log.exp())
}

/// Assemble the full (p+1) x (p+1) connection matrix J_nk by pushing each
/// small-z block pair through the Mellin-Barnes re-expansion and collecting
/// the coefficient of e^{i pi(a_n - a~_k)} z^{-a_n} zbar^{-a~_k}
/// F_n(1/z) F~_k(1/zbar).
///
/// Single-valuedness (Lemma 3 in disguise) forces the off-diagonals to
/// vanish; the diagonal must reproduce [`large_z_coeffs`]. This is the
/// internal-consistency oracle for the large-z closed form.
pub fn connection_matrix(ps: &ParameterSet) -> Result<Vec<Vec<Complex64>>> {
    let p = ps.p;
    let lambda = lambda_coeffs(ps)?.coeffs;

    // d[j][k]: gamma-ratio coefficient of the expansion of u_j over the
    // large-z basis element k (phases handled by the caller below).
    let mut d = vec![vec![Complex64::new(0.0, 0.0); p + 1]; p + 1];
    let mut dt = vec![vec![Complex64::new(0.0, 0.0); p + 1]; p + 1];
    let one = Complex64::new(1.0, 0.0);
    for tilded in [false, true] {
        let av: Vec<Complex64> = (0..=p).map(|i| if tilded { ps.at(i) } else { ps.av(i) }).collect();
        let bv: Vec<Complex64> = (0..=p).map(|i| if tilded { ps.bt(i) } else { ps.bv(i) }).collect();
        for j in 0..=p {
            for k in 0..=p {
                let mut log = Complex64::new(0.0, 0.0);
                for i in 0..=p {
                    if i != j {
                        log += log_gamma(bv[i] - bv[j] + one)?;
                    }
                    log -= log_gamma(av[i] - bv[j] + one)?;
                }
                log += log_gamma(av[k] - bv[j] + one)?;
                for l in 0..=p {
                    if l != k {
                        log += log_gamma(av[l] - av[k])?;
                    }
                    if l != j {
                        log -= log_gamma(bv[l] - av[k])?;
                    }
                }
                let v = log.exp();
                if tilded {
                    dt[j][k] = v;
                } else {
                    d[j][k] = v;
                }
            }
        }
    }

    let mut jmat = vec![vec![Complex64::new(0.0, 0.0); p + 1]; p + 1];
    for n in 0..=p {
        for k in 0..=p {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=p {
                // e^{i pi (1-b_j)} e^{-i pi (1-b~_j)} = (-1)^{b~_j - b_j}
                let phase = parity_of(ps.bv(j) - ps.bt(j), "b[j]-b~[j]")?;
                acc += lambda[j] * phase * d[j][n] * dt[j][k];
            }
            jmat[n][k] = acc;
        }
    }
    Ok(jmat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fixture_p1() -> ParameterSet {
        ParameterSet::new(
            (0.3, 0.0),
            (0.3, 0.0),
            &[(0.4, 0.0)],
            &[(1.2, 0.0)],
            &[(-0.6, 0.0)],
            &[(0.2, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn beta_tilde_symmetry() {
        // sin-ratio over tilded arguments equals the ratio over untilded
        // ones whenever the differences are integers.
        let (al, be) = (c(0.37, 0.21), c(0.81, -0.4));
        let (alt, bet) = (al - 2.0, be + 1.0);
        let b = generalized_beta(al, be, alt, bet).unwrap();
        let lg = |z: Complex64| log_gamma(z).unwrap();
        let swapped = (lg(al) + lg(be) - lg(al + be) + lg(alt) + lg(bet) - lg(alt + bet)
            + sin_pi_log(al)
            + sin_pi_log(be)
            - sin_pi_log(al + be))
        .exp();
        assert!((b - swapped).norm() < 1e-12 * b.norm());
    }

    #[test]
    fn beta_one_third_value() {
        let third = c(1.0 / 3.0, 0.0);
        let b = generalized_beta(third, third, third, third).unwrap();
        let g13 = log_gamma(third).unwrap().exp();
        let g23 = log_gamma(2.0 * third).unwrap().exp();
        let ratio = (PI / 3.0).sin() * (PI / 3.0).sin() / (2.0 * PI / 3.0).sin();
        let want = (g13 * g13 / g23) * (g13 * g13 / g23) * ratio;
        assert!((b - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn beta_error_paths() {
        assert!(matches!(
            generalized_beta(c(0.3, 0.0), c(0.4, 0.0), c(0.25, 0.0), c(0.4, 0.0)),
            Err(Error::NonIntegerDifference(_, _))
        ));
        assert!(matches!(
            generalized_beta(c(0.3, 0.0), c(0.7, 0.0), c(0.3, 0.0), c(0.7, 0.0)),
            Err(Error::SineZero(_))
        ));
        assert!(matches!(
            generalized_beta(c(-1.0, 0.0), c(0.4, 0.0), c(-1.0, 0.0), c(0.4, 0.0)),
            Err(Error::GammaPole(_))
        ));
    }

    #[test]
    fn lambda_p1_matches_printed_forms() {
        let ps = fixture_p1();
        let lam = lambda_coeffs(&ps).unwrap().coeffs;

        // lambda_0^(2) printed form
        let lg = |z: Complex64| log_gamma(z).unwrap();
        let (a1, b1, a1t, b1t) = (ps.a[0], ps.b[0], ps.a_t[0], ps.b_t[0]);
        let l0 = (lg(a1) + lg(b1 - a1) - lg(b1) + lg(a1t) + lg(b1t - a1t) - lg(b1t)).exp()
            * (PI * a1t).sin()
            * (PI * (b1t - a1t)).sin()
            / (PI * b1t).sin();
        assert!((lam[0] - l0).norm() < 1e-12 * l0.norm());

        // lambda_1^(2) printed form, with the (-1)^{b-b~+a-a~} phase
        let (a0, a0t) = (ps.a0, ps.a0_t);
        let phase = {
            let k = (b1 - b1t + a1 - a1t).re.round() as i64;
            if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
        };
        let l1 = phase
            * (lg(b1 - 1.0) + lg(1.0 - a0) - lg(b1 - a0) + lg(b1t - 1.0) + lg(1.0 - a0t)
                - lg(b1t - a0t))
            .exp()
            * (PI * b1).sin()
            * (-PI * a0).sin()
            / (PI * (b1 - a0)).sin();
        assert!(
            (lam[1] - l1).norm() < 1e-12 * l1.norm(),
            "lam1 = {}, printed = {l1}",
            lam[1]
        );
    }

    #[test]
    fn lambda0_ignores_a0() {
        let mut ps = fixture_p1();
        let l0_first = lambda_coeffs(&ps).unwrap().coeffs[0];
        ps.a0 = c(0.77, 0.1);
        ps.a0_t = ps.a0 - 1.0;
        let l0_second = lambda_coeffs(&ps).unwrap().coeffs[0];
        assert!((l0_first - l0_second).norm() < 1e-14 * l0_first.norm());
    }
}
