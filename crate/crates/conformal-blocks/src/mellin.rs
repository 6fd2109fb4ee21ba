//! The boundary integral as residue sums of a gamma-ratio kernel over the
//! left/right contours, its closed form at w -> 1, and the generalized
//! Euler cross-check.

use crate::blocks::{lambda_coeffs, ParameterSet};
use crate::specfun::{log_gamma, sin_pi_log, SeriesResult};
use crate::util::{near_integer, KahanSum};
use crate::{Error, Result, NEAR_INTEGER_TOL, SERIES_TERM_CAP};
use num_complex::Complex64;
use std::f64::consts::PI;

/// The integrand of the contour representation:
///
///   scale * prod_j Gamma(1-b_j-t) Gamma(d+a~_j+t) /
///           (Gamma(1-a_j-t) Gamma(d+b~_j+t))
///         * 1/(t+b_p-1) * w^{2(b_p-1+t)},
///
/// with d = b_p - b~_p and the convention b_0 = b~_0 = 1. Right poles come
/// from the Gamma(1-b_j-t) factors, left poles from Gamma(d+a~_j+t), and
/// one boundary pole from 1/(t+b_p-1).
#[derive(Debug, Clone)]
pub struct GammaRatioKernel {
    /// 1 - b_j (right-pole bases; poles at t = 1 - b_j + n).
    pub right_bases: Vec<Complex64>,
    /// d + a~_j (left-pole bases; poles at t = -(d + a~_j) - n).
    pub left_bases: Vec<Complex64>,
    /// 1 - a_j (denominator offsets of the -t family).
    pub den_minus: Vec<Complex64>,
    /// d + b~_j (denominator offsets of the +t family).
    pub den_plus: Vec<Complex64>,
    /// b_p - 1: the boundary pole sits at t = 1 - b_p and the w power is
    /// w^{2(b_p - 1 + t)}.
    pub power_base_exponent: Complex64,
    /// Whether the 1/(t + b_p - 1) factor is present.
    pub boundary_pole: bool,
    /// Overall scale (pi^2 mu_{p-1} for the boundary integral).
    pub scale: Complex64,
}

/// (1/pi^2)(-1)^{a0-a~0} prod_{i=0}^{p-1} Gamma(b_i-a_i) Gamma(b~_i-a~_i)
/// sin(pi(b_i-a_i)) over the inner (top pair dropped) system, b_0 = 1.
fn mu_lower(ps: &ParameterSet) -> Result<Complex64> {
    let m = near_integer(ps.a0 - ps.a0_t, 1e-6)
        .ok_or_else(|| Error::ConditionC("a0 - a~0 is not an integer".into()))?;
    let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let mut log = Complex64::new(-2.0 * PI.ln(), 0.0);
    for i in 0..ps.p {
        log += log_gamma(ps.bv(i) - ps.av(i))?;
        log += log_gamma(ps.bt(i) - ps.at(i))?;
        log += sin_pi_log(ps.bv(i) - ps.av(i));
    }
    Ok(sign * log.exp())
}

impl GammaRatioKernel {
    /// Kernel of the boundary integral of the p-pair system: the inner
    /// blocks run over j = 0..p-1 and the outer exponent pair is
    /// (b_p, b~_p).
    pub fn from_params(ps: &ParameterSet) -> Result<Self> {
        ps.require_condition_c()?;
        let p = ps.p;
        let d = ps.bv(p) - ps.bt(p);
        let one = Complex64::new(1.0, 0.0);
        let kernel = GammaRatioKernel {
            right_bases: (0..p).map(|j| one - ps.bv(j)).collect(),
            left_bases: (0..p).map(|j| d + ps.at(j)).collect(),
            den_minus: (0..p).map(|j| one - ps.av(j)).collect(),
            den_plus: (0..p).map(|j| d + ps.bt(j)).collect(),
            power_base_exponent: ps.bv(p) - one,
            boundary_pole: true,
            scale: PI * PI * mu_lower(ps)?,
        };
        kernel.check_pole_families()?;
        Ok(kernel)
    }

    /// Error when any two pole families can collide (their bases differ by
    /// an integer), which would create double poles.
    pub fn check_pole_families(&self) -> Result<()> {
        let mut bases: Vec<(String, Complex64)> = Vec::new();
        for (j, &b) in self.right_bases.iter().enumerate() {
            bases.push((format!("right[{j}]"), b));
        }
        for (j, &b) in self.left_bases.iter().enumerate() {
            bases.push((format!("left[{j}]"), -b));
        }
        if self.boundary_pole {
            bases.push(("boundary".into(), -self.power_base_exponent));
        }
        for i in 0..bases.len() {
            for j in (i + 1)..bases.len() {
                if near_integer(bases[i].1 - bases[j].1, NEAR_INTEGER_TOL).is_some() {
                    return Err(Error::PoleCollision(format!(
                        "{} and {} differ by an integer",
                        bases[i].0, bases[j].0
                    )));
                }
            }
        }
        Ok(())
    }

    /// log of every non-singular factor at t, skipping the gamma factor of
    /// family `skip` (whose residue the caller supplies analytically).
    /// `skip` indexes right families as (0, j) and left families as (1, j).
    fn log_rest(&self, t: Complex64, skip: (usize, usize)) -> Result<Complex64> {
        let mut log = Complex64::new(0.0, 0.0);
        for (j, &b) in self.right_bases.iter().enumerate() {
            if skip != (0, j) {
                log += log_gamma(b - t)?;
            }
        }
        for (j, &b) in self.left_bases.iter().enumerate() {
            if skip != (1, j) {
                log += log_gamma(b + t)?;
            }
        }
        for &b in &self.den_minus {
            log -= log_gamma(b - t)?;
        }
        for &b in &self.den_plus {
            log -= log_gamma(b + t)?;
        }
        Ok(log)
    }

    fn boundary_factor(&self, t: Complex64) -> Complex64 {
        if self.boundary_pole {
            (t + self.power_base_exponent).finv()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }

    fn w_power(&self, t: Complex64, w: f64) -> Complex64 {
        (2.0 * (self.power_base_exponent + t) * w.ln()).exp()
    }
}

/// Sum one pole family t = base + step n, n >= 0, with residue magnitudes
/// (-1)^n / n! * rest(t_n). Stops by the small-term rule or, on the
/// asymptotic side of w = 1, at the smallest term with an honest tail.
fn sum_family(
    kernel: &GammaRatioKernel,
    skip: (usize, usize),
    base: Complex64,
    step: f64,
    w: f64,
    tol: f64,
    total_hint: f64,
) -> Result<(Complex64, f64, usize, bool)> {
    let mut acc = KahanSum::new();
    let mut log_fact = 0.0f64;
    let mut small_run = 0usize;
    let mut best_term = f64::INFINITY;
    let mut grow_run = 0usize;
    let mut tail = 0.0f64;
    let mut converged = false;
    let mut used = 0usize;

    for n in 0..SERIES_TERM_CAP {
        let nf = n as f64;
        if n > 0 {
            log_fact += nf.ln();
        }
        let t = base + step * nf;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let log_rest = kernel.log_rest(t, skip)?;
        let term = sign
            * (log_rest - log_fact).exp()
            * kernel.boundary_factor(t)
            * kernel.w_power(t, w);
        acc.add(term);
        used = n + 1;
        let mag = term.norm();
        let scale = acc.value().norm().max(total_hint);

        if mag <= tol * scale {
            small_run += 1;
            if small_run >= 3 {
                tail = mag;
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
        // asymptotic truncation: once terms grow persistently past their
        // minimum, stop at the minimum and report it as the tail
        if mag < best_term {
            best_term = mag;
            grow_run = 0;
        } else if n > 4 {
            grow_run += 1;
            if grow_run >= 4 {
                tail = best_term.max(mag);
                converged = false;
                break;
            }
        }
        if n + 1 == SERIES_TERM_CAP {
            tail = mag;
        }
    }
    Ok((acc.value(), tail, used, converged))
}

/// Residue sum over the right contour (poles of the Gamma(...-t) factors),
/// negative orientation.
pub fn residue_sum_right(kernel: &GammaRatioKernel, w: f64, tol: f64) -> Result<SeriesResult> {
    if w <= 0.0 {
        return Err(Error::BadInput("w must be positive".into()));
    }
    if w >= 1.0 + 0.05 {
        return Err(Error::NonConvergent(w));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    let mut terms = 0usize;
    let mut converged = true;
    let mut hint = 0.0f64;
    for (j, &rb) in kernel.right_bases.iter().enumerate() {
        let (v, t, n, ok) = sum_family(kernel, (0, j), rb, 1.0, w, tol, hint)?;
        value += v;
        tail += t;
        terms = terms.max(n);
        converged &= ok;
        hint = hint.max(value.norm());
    }
    value *= kernel.scale;
    tail *= kernel.scale.norm();
    Ok(SeriesResult {
        value,
        terms_used: terms.max(1),
        tail_bound: tail,
        converged: converged && tail <= tol * value.norm(),
    })
}

/// Residue sum over the left contour (poles of the Gamma(...+t) factors
/// plus the boundary pole), positive orientation.
pub fn residue_sum_left(kernel: &GammaRatioKernel, w: f64, tol: f64) -> Result<SeriesResult> {
    if w <= 0.0 {
        return Err(Error::BadInput("w must be positive".into()));
    }
    if w <= 1.0 - 0.05 {
        return Err(Error::NonConvergent(w));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    let mut terms = 0usize;
    let mut converged = true;
    let mut hint = 0.0f64;
    for (j, &lb) in kernel.left_bases.iter().enumerate() {
        let (v, t, n, ok) = sum_family(kernel, (1, j), -lb, -1.0, w, tol, hint)?;
        value += v;
        tail += t;
        terms = terms.max(n);
        converged &= ok;
        hint = hint.max(value.norm());
    }
    if kernel.boundary_pole {
        let t0 = -kernel.power_base_exponent;
        let rest = kernel.log_rest(t0, (usize::MAX, usize::MAX))?.exp();
        value += rest * kernel.w_power(t0, w);
        terms = terms.max(1);
    }
    value *= kernel.scale;
    tail *= kernel.scale.norm();
    Ok(SeriesResult {
        value,
        terms_used: terms.max(1),
        tail_bound: tail,
        converged: converged && tail <= tol * value.norm(),
    })
}

/// The boundary-pole contribution alone: scale times the residue of the
/// kernel at t = 1 - b_p (w-independent, since the w power vanishes
/// there). The boundary integral equals exactly this term once the
/// left/right contour values cancel through Cauchy's theorem.
pub fn boundary_residue(kernel: &GammaRatioKernel) -> Result<Complex64> {
    if !kernel.boundary_pole {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let t0 = -kernel.power_base_exponent;
    Ok(kernel.scale * kernel.log_rest(t0, (usize::MAX, usize::MAX))?.exp())
}

/// w -> 1 limits of the right and left residue sums, each extrapolated
/// from its convergent side over a geometric delta ladder (repeated Aitken
/// steps remove the analytic delta corrections). Returns (limit from
/// below, limit from above); Cauchy's theorem makes them equal.
pub fn two_sided_limits(
    kernel: &GammaRatioKernel,
    tol: f64,
) -> Result<(Complex64, Complex64)> {
    let deltas = [1.6e-2, 8e-3, 4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4];
    let mut right = Vec::with_capacity(deltas.len());
    let mut left = Vec::with_capacity(deltas.len());
    for &d in &deltas {
        right.push(residue_sum_right(kernel, 1.0 - d, tol)?.value);
        left.push(residue_sum_left(kernel, 1.0 + d, tol)?.value);
    }
    let (fr, _) = crate::util::aitken_limit(&right);
    let (fl, _) = crate::util::aitken_limit(&left);
    Ok((fr, fl))
}

/// The closed form of the boundary integral:
///   I = pi^2 mu_{p-1} prod_{j=0}^{p-1} Gamma(b_p-b_j) Gamma(1-b~_p+a~_j)
///       / (Gamma(b_p-a_j) Gamma(1-b~_p+b~_j)),
/// together with the equivalent (-1)^{(b_p-b~_p)-(a_p-a~_p)} lambda_p^{p+1}
/// form for cross-checking.
pub fn boundary_value_closed_form(ps: &ParameterSet) -> Result<(Complex64, Complex64)> {
    ps.require_condition_c()?;
    let p = ps.p;
    // appendix hypothesis: b_p - b~_p - b_i + b~_i >= 0 for i < p
    for i in 0..p {
        let d = ps.bv(p) - ps.bt(p) - ps.bv(i) + ps.bt(i);
        let n = near_integer(d, 1e-6)
            .ok_or_else(|| Error::ConditionC(format!("b_p-b~_p-b_{i}+b~_{i} not integer")))?;
        if n < 0 {
            return Err(Error::NonConvergentWindow(format!(
                "appendix hypothesis b_p-b~_p-b_{i}+b~_{i} = {n} < 0"
            )));
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let mut log = Complex64::new(0.0, 0.0);
    for j in 0..p {
        log += log_gamma(ps.bv(p) - ps.bv(j))?;
        log += log_gamma(one - ps.bt(p) + ps.at(j))?;
        log -= log_gamma(ps.bv(p) - ps.av(j))?;
        log -= log_gamma(one - ps.bt(p) + ps.bt(j))?;
    }
    let value = PI * PI * mu_lower(ps)? * log.exp();

    let lam_p = lambda_coeffs(ps)?.coeffs[p];
    let k = near_integer(
        ps.bv(p) - ps.bt(p) - (ps.av(p) - ps.at(p)),
        1e-6,
    )
    .ok_or_else(|| Error::ConditionC("phase exponent not integer".into()))?;
    let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok((value, sign * lam_p))
}

/// The generalized-Euler recovery value
///   pi Gamma(a) Gamma(b) Gamma(1-a~-b~) / (Gamma(1-b~) Gamma(b+a) Gamma(1-a~)),
/// which must coincide with the generalized Euler function when a-a~ and
/// b-b~ are integers.
pub fn euler_recovery_formula(
    a: Complex64,
    b: Complex64,
    a_t: Complex64,
    b_t: Complex64,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let log = log_gamma(a)? + log_gamma(b)? + log_gamma(one - a_t - b_t)?
        - log_gamma(one - b_t)?
        - log_gamma(a + b)?
        - log_gamma(one - a_t)?;
    Ok(PI * log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::generalized_beta;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// p = 1 system whose boundary integral is the generalized Euler
    /// function B_{b1-1, 1-a0; b~1-1, 1-a~0}.
    fn p1_fixture() -> ParameterSet {
        ParameterSet::new(
            (0.12, 0.0),
            (0.12, 0.0),
            &[(0.41, 0.0)],
            &[(2.3, 0.0)],
            &[(0.41, 0.0)],
            &[(1.3, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn closed_form_equals_lambda_form_p1() {
        let (value, lam_form) = boundary_value_closed_form(&p1_fixture()).unwrap();
        assert!(
            (value - lam_form).norm() < 1e-12 * value.norm(),
            "product {value} lambda-form {lam_form}"
        );
    }

    #[test]
    fn closed_form_equals_gen_beta_p1() {
        // The p = 1 boundary integral IS B_{b1-1, 1-a0; b~1-1, 1-a~0}.
        let ps = p1_fixture();
        let (value, _) = boundary_value_closed_form(&ps).unwrap();
        let one = c(1.0, 0.0);
        let direct = generalized_beta(
            ps.b[0] - one,
            one - ps.a0,
            ps.b_t[0] - one,
            one - ps.a0_t,
        )
        .unwrap();
        assert!(
            (value - direct).norm() < 1e-12 * direct.norm(),
            "closed {value} gen-beta {direct}"
        );
    }

    #[test]
    fn cauchy_identity_two_sided_limits() {
        // The sums converge on opposite sides of w = 1; extrapolate each to
        // the wall and compare there.
        let kernel = GammaRatioKernel::from_params(&p1_fixture()).unwrap();
        let (fr, fl) = two_sided_limits(&kernel, 1e-13).unwrap();
        assert!(
            (fr - fl).norm() <= 1e-8 * fr.norm(),
            "right limit {fr} left limit {fl} rel {:.3e}",
            (fr - fl).norm() / fr.norm()
        );
    }

    #[test]
    fn boundary_value_reconstructed_from_two_sides() {
        // I = lim f_R + (Res_b - lim f_L): the I1/I2 split must cancel
        // through the Cauchy identity leaving exactly the boundary residue.
        let ps = p1_fixture();
        let kernel = GammaRatioKernel::from_params(&ps).unwrap();
        let (fr, fl) = two_sided_limits(&kernel, 1e-13).unwrap();
        let res_b = boundary_residue(&kernel).unwrap();
        let reconstructed = fr + res_b - fl;
        let (closed, _) = boundary_value_closed_form(&ps).unwrap();
        assert!(
            (reconstructed - closed).norm() <= 1e-6 * closed.norm(),
            "reconstructed {reconstructed} closed {closed}"
        );
        // and the boundary residue itself IS the closed form
        assert!((res_b - closed).norm() <= 1e-12 * closed.norm());
    }

    #[test]
    fn residue_truncation_is_geometric() {
        let kernel = GammaRatioKernel::from_params(&p1_fixture()).unwrap();
        let full = residue_sum_right(&kernel, 0.9, 1e-13).unwrap();
        let loose = residue_sum_right(&kernel, 0.9, 1e-6).unwrap();
        assert!(full.converged);
        assert!((full.value - loose.value).norm() < 1e-5 * full.value.norm());
    }

    #[test]
    fn euler_recovery_matches_gen_beta() {
        let (a, b) = (c(0.37, 0.12), c(0.56, -0.2));
        let (a_t, b_t) = (a - 1.0, b + 2.0);
        let rec = euler_recovery_formula(a, b, a_t, b_t).unwrap();
        let gb = generalized_beta(a, b, a_t, b_t).unwrap();
        assert!(
            (rec - gb).norm() < 1e-12 * gb.norm(),
            "recovery {rec} gen-beta {gb}"
        );
    }

    #[test]
    fn empty_kernel_sums_to_zero() {
        let kernel = GammaRatioKernel {
            right_bases: vec![],
            left_bases: vec![],
            den_minus: vec![],
            den_plus: vec![],
            power_base_exponent: c(0.7, 0.0),
            boundary_pole: false,
            scale: c(1.0, 0.0),
        };
        let l = residue_sum_left(&kernel, 1.1, 1e-10).unwrap();
        assert_eq!(l.value, c(0.0, 0.0));
    }

    #[test]
    fn pole_collision_detected() {
        // b_1 - b_2 integer collides two right families; Condition C
        // rejects it upstream, so exercise the kernel check directly.
        let kernel = GammaRatioKernel {
            right_bases: vec![c(-0.3, 0.0), c(0.7, 0.0)],
            left_bases: vec![],
            den_minus: vec![],
            den_plus: vec![],
            power_base_exponent: c(0.7, 0.0),
            boundary_pole: false,
            scale: c(1.0, 0.0),
        };
        assert!(matches!(
            kernel.check_pole_families(),
            Err(Error::PoleCollision(_))
        ));
    }
}
