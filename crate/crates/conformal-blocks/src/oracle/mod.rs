//! Independent brute-force evaluation of the defining integrals, used to
//! verify every closed form. Nothing here shares code with the block
//! decompositions it checks (the block evaluators appear only inside the
//! AppendixA integrand, whose closed form lives in the residue machinery).

mod integrand;
mod mc;
mod oscillatory;
pub mod quad;

pub use integrand::{holo_pair, ip2_integrand, plane_integrand, IntegrandKind, IntegrandSpec};
pub use mc::{mc_ip2, mc_plane, PlaneMixture, N_STRATA};
pub use oscillatory::{damped_ladder, Regularization};

use crate::util::{aitken_limit, pair_pow};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default epsilon ladder for the damped oscillatory oracles.
pub const EPS_LADDER: [f64; 3] = [0.2, 0.1, 0.05];

/// How an estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Adaptive,
    Mc,
}

/// An oracle result with honest error accounting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureEstimate {
    pub value: Complex64,
    pub abs_error: f64,
    pub n_evals: u64,
    pub method: Method,
    /// Seed of the stratified streams (MC only).
    pub seed: Option<u64>,
    /// Damping ladder and extrapolation record (oscillatory kinds only).
    pub regularization: Option<Regularization>,
}

/// Evaluate a defining integral by the method suited to its kind:
/// adaptive patch quadrature for the 2D kinds, the damped epsilon ladder
/// for the oscillatory ones, stratified Monte Carlo for the
/// four-dimensional p = 2 kind (seeded with 0; use [`integrate_mc`] to
/// control the seed).
///
/// Exhausting `budget` is not an error: the best estimate is returned and
/// `abs_error` stays honest.
pub fn integrate(spec: &IntegrandSpec, budget: u64, tol: f64) -> Result<QuadratureEstimate> {
    spec.check_window()?;
    match &spec.kind {
        IntegrandKind::GenBeta { .. } | IntegrandKind::Ip1 { .. } | IntegrandKind::AppendixA { .. } => {
            let g = plane_integrand(spec, 0.0)?;
            let plane = quad::Plane2D {
                f: &*g.f,
                singular: g.singular.clone(),
                tail_exponent: g.tail_exponent,
            };
            let (value, abs_error, n_evals) = quad::integrate_plane(&plane, budget, tol);
            Ok(QuadratureEstimate {
                value,
                abs_error,
                n_evals,
                method: Method::Adaptive,
                seed: None,
                regularization: None,
            })
        }
        IntegrandKind::Fourier { .. } | IntegrandKind::Qcd { .. } => {
            let (value, abs_error, n_evals, reg) = damped_ladder(spec, &EPS_LADDER)?;
            Ok(QuadratureEstimate {
                value,
                abs_error,
                n_evals,
                method: Method::Adaptive,
                seed: None,
                regularization: Some(reg),
            })
        }
        IntegrandKind::Ip2Iterated { .. } => integrate_mc(spec, budget, 0),
    }
}

/// Stratified Monte Carlo with a caller-controlled seed. Works for the 2D
/// kinds and the 4D p = 2 kind; results are bit-identical for any worker
/// count at a fixed seed and budget.
pub fn integrate_mc(spec: &IntegrandSpec, budget: u64, seed: u64) -> Result<QuadratureEstimate> {
    spec.check_window()?;
    let est = match &spec.kind {
        IntegrandKind::Ip2Iterated { .. } => mc_ip2(spec, budget, seed)?,
        IntegrandKind::GenBeta { .. } | IntegrandKind::Ip1 { .. } | IntegrandKind::AppendixA { .. } => {
            mc_plane(spec, budget, seed)?
        }
        _ => {
            return Err(Error::BadInput(
                "Monte Carlo path supports the non-oscillatory kinds".into(),
            ))
        }
    };
    Ok(QuadratureEstimate {
        value: est.value,
        abs_error: est.abs_error,
        n_evals: est.n_evals,
        method: Method::Mc,
        seed: Some(seed),
        regularization: None,
    })
}

/// Richardson-extrapolated limit of z^beta zbar^beta~ I(z) along the
/// positive reals over a geometric z ladder (repeated Aitken steps remove
/// the slow power corrections one scale at a time). GenBeta specs have no
/// z: the integral is returned as-is.
pub fn oracle_limits(
    spec: &IntegrandSpec,
    exponents: (Complex64, Complex64),
    budget: u64,
    tol: f64,
) -> Result<Complex64> {
    let ladder = [0.243, 0.081, 0.027, 0.009, 0.003];
    let (beta, beta_t) = exponents;
    let at_z = |z: f64| -> Result<Complex64> {
        let respec = match &spec.kind {
            IntegrandKind::Ip1 { params, .. } => {
                IntegrandSpec::ip1(params.clone(), Complex64::new(z, 0.0))?
            }
            IntegrandKind::Ip2Iterated { params, .. } => {
                IntegrandSpec::ip2(params.clone(), Complex64::new(z, 0.0))?
            }
            _ => unreachable!(),
        };
        let est = integrate(&respec, budget, tol)?;
        Ok(pair_pow(z, 0.0, beta, beta_t) * est.value)
    };
    match &spec.kind {
        IntegrandKind::GenBeta { .. } => Ok(integrate(spec, budget, tol)?.value),
        IntegrandKind::Ip1 { .. } | IntegrandKind::Ip2Iterated { .. } => {
            let mut vals = Vec::with_capacity(ladder.len());
            for &z in &ladder {
                vals.push(at_z(z)?);
            }
            for w in vals.windows(3) {
                let d01 = (w[1] - w[0]).norm();
                let d12 = (w[2] - w[1]).norm();
                if d12 > 2.0 * d01 && d12 > 1e-9 {
                    return Err(Error::ExtrapolationUnstable(format!(
                        "successive differences grow: {d01:.3e} then {d12:.3e}"
                    )));
                }
            }
            let (limit, _) = aitken_limit(&vals);
            Ok(limit)
        }
        _ => Err(Error::BadInput(
            "oracle_limits applies to the z-dependent kinds".into(),
        )),
    }
}
