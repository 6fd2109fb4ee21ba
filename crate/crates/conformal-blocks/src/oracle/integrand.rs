//! The defining integrands, with their singularity metadata.
//!
//! Under Condition C(d) every holomorphic/antiholomorphic pair is
//! single-valued on the plane minus its branch points, so the integrands
//! need no cut bookkeeping: only the marked singular points and the tail
//! behaviour matter to the quadrature.

use crate::blocks::{evaluate_large_z_with_phase, evaluate_small_z_with_phase, ParameterSet};
use crate::util::{arg01, pair_pow};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quad::Sing;

/// w^e * conj(w)^et as a single-valued pair (e - et integer).
#[inline]
pub fn holo_pair(w: Complex64, e: Complex64, et: Complex64) -> Complex64 {
    pair_pow(w.norm(), w.arg(), e, et)
}

/// Which defining integral the oracle is asked to evaluate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum IntegrandKind {
    /// 2D generalized Euler integrand
    /// t^{alpha-1}(1-t)^{beta-1} conj-pair.
    GenBeta {
        alpha: Complex64,
        beta: Complex64,
        alpha_t: Complex64,
        beta_t: Complex64,
    },
    /// The p = 1 integral at the given z (2D).
    Ip1 { params: ParameterSet, z: Complex64 },
    /// The p = 2 integral in its iterated form: the inner I_1 closed form
    /// is substituted analytically, leaving a 4-real-dimensional integral
    /// (Monte Carlo only).
    Ip2Iterated { params: ParameterSet, z: Complex64 },
    /// Power-law Fourier integrand t^{gamma-1} tbar^{gamma_t-1}
    /// e^{i(t+tbar)} with e^{-eps r} damping (epsilon ladder + Aitken).
    Fourier { gamma: Complex64, gamma_t: Complex64 },
    /// Hankel-product integrand e^{i(q1 zbar + conj(q1) z)} /
    /// ((z^2-1)^{u+1/2} (zbar^2-1)^{u_hat+1/2}), damped the same way.
    Qcd {
        u: Complex64,
        u_hat: Complex64,
        q1: Complex64,
    },
    /// Appendix boundary integrand t^{b_p-2} tbar^{b~_p-2} I_inner(t, tbar),
    /// where I_inner is the block sum of the system with the top pair
    /// removed.
    AppendixA { params: ParameterSet },
}

/// An oracle job: the integrand plus the cut angle of the moving point
/// (documentation of arg z; the integrands themselves are single-valued).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegrandSpec {
    pub kind: IntegrandKind,
    pub cut_angle: f64,
}

impl IntegrandSpec {
    pub fn gen_beta(
        alpha: Complex64,
        beta: Complex64,
        alpha_t: Complex64,
        beta_t: Complex64,
    ) -> Result<Self> {
        let spec = IntegrandSpec {
            kind: IntegrandKind::GenBeta {
                alpha,
                beta,
                alpha_t,
                beta_t,
            },
            cut_angle: 0.0,
        };
        spec.check_window()?;
        Ok(spec)
    }

    pub fn ip1(params: ParameterSet, z: Complex64) -> Result<Self> {
        if params.p != 1 {
            return Err(Error::BadInput("Ip1 oracle requires p = 1".into()));
        }
        let spec = IntegrandSpec {
            kind: IntegrandKind::Ip1 { params, z },
            cut_angle: arg01(z),
        };
        spec.check_window()?;
        Ok(spec)
    }

    pub fn ip2(params: ParameterSet, z: Complex64) -> Result<Self> {
        if params.p != 2 {
            return Err(Error::BadInput("Ip2 oracle requires p = 2".into()));
        }
        let spec = IntegrandSpec {
            kind: IntegrandKind::Ip2Iterated { params, z },
            cut_angle: arg01(z),
        };
        spec.check_window()?;
        Ok(spec)
    }

    pub fn fourier(gamma: Complex64, gamma_t: Complex64) -> Result<Self> {
        let s = (gamma + gamma_t).re;
        if s <= 0.0 || s >= 1.0 {
            return Err(Error::NonConvergentWindow(format!(
                "Fourier oracle needs 0 < Re(gamma + gamma~) < 1, got {s}"
            )));
        }
        Ok(IntegrandSpec {
            kind: IntegrandKind::Fourier { gamma, gamma_t },
            cut_angle: 0.0,
        })
    }

    pub fn qcd(u: Complex64, u_hat: Complex64, q1: Complex64) -> Result<Self> {
        let s = (u + u_hat).re;
        if s <= -0.25 || s >= 1.0 {
            return Err(Error::NonConvergentWindow(format!(
                "QCD oracle needs -1/4 < Re(u + u^) < 1, got {s}"
            )));
        }
        if q1.re <= 0.0 {
            return Err(Error::BadInput("QCD oracle assumes Re q1 > 0".into()));
        }
        Ok(IntegrandSpec {
            kind: IntegrandKind::Qcd { u, u_hat, q1 },
            cut_angle: q1.arg(),
        })
    }

    pub fn appendix_a(params: ParameterSet) -> Result<Self> {
        params.require_condition_c()?;
        let spec = IntegrandSpec {
            kind: IntegrandKind::AppendixA { params },
            cut_angle: 0.0,
        };
        spec.check_window()?;
        Ok(spec)
    }

    /// Verify the convergence-window inequalities of the chosen kind.
    pub fn check_window(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::NonConvergentWindow(msg));
        match &self.kind {
            IntegrandKind::GenBeta {
                alpha,
                beta,
                alpha_t,
                beta_t,
            } => {
                let s0 = (alpha + alpha_t).re;
                let s1 = (beta + beta_t).re;
                if s0 <= 0.0 {
                    return fail(format!("Re(alpha + alpha~) = {s0} <= 0"));
                }
                if s1 <= 0.0 {
                    return fail(format!("Re(beta + beta~) = {s1} <= 0"));
                }
                if s0 + s1 >= 2.0 {
                    return fail(format!("Re(sum of exponents) = {} >= 2", s0 + s1));
                }
                Ok(())
            }
            IntegrandKind::Ip1 { params, z } | IntegrandKind::Ip2Iterated { params, z } => {
                let w = params.validate().windows;
                let r = z.norm();
                if r == 0.0 {
                    // factorized case: no moving factor, the tail needs
                    // Re(b_i + b~_i) < 2 on its own
                    for i in 1..=params.p {
                        let s = (params.bv(i) + params.bt(i)).re;
                        if s >= 2.0 {
                            return fail(format!("z = 0 tail: Re(b_{i} + b~_{i}) = {s} >= 2"));
                        }
                    }
                    if !(w.origin_ok && w.one_ok) {
                        return fail(format!("integral windows violated: {w:?}"));
                    }
                    return Ok(());
                }
                if !w.all() {
                    return fail(format!("integral windows violated: {w:?}"));
                }
                // tiny nonzero z puts the moving singularity out of reach
                if (z - Complex64::new(1.0, 0.0)).norm() < 1e-3 || r < 1e-3 {
                    return Err(Error::BadInput(format!("z = {z} too close to 0 or 1")));
                }
                Ok(())
            }
            IntegrandKind::Fourier { .. } | IntegrandKind::Qcd { .. } => Ok(()),
            IntegrandKind::AppendixA { params } => {
                let p = params.p;
                // b_p - b~_p - b_i + b~_i >= 0 plus decay of the boundary
                // integrand at 0 and infinity.
                let bp = params.bv(p) + params.bt(p);
                if bp.re <= 2.0 {
                    return fail(format!("Re(b_p + b~_p) = {} <= 2", bp.re));
                }
                for i in 0..p {
                    let d = (params.bv(p) - params.bt(p) - params.bv(i) + params.bt(i)).re;
                    if d < 0.0 {
                        return fail(format!("b_p - b~_p - b_{i} + b~_{i} = {d} < 0"));
                    }
                }
                Ok(())
            }
        }
    }
}

/// A 2D integrand closure plus its singularity metadata (everything the
/// adaptive engine and the importance sampler need).
pub struct PlaneIntegrand {
    pub f: Box<dyn Fn(Complex64) -> Complex64 + Sync + Send>,
    pub singular: Vec<Sing>,
    pub tail_exponent: f64,
}

/// Build the plane integrand for the 2D kinds. `eps` adds e^{-eps |t|}
/// damping (used by the oscillatory kinds; pass 0.0 elsewhere).
pub fn plane_integrand(spec: &IntegrandSpec, eps: f64) -> Result<PlaneIntegrand> {
    let one = Complex64::new(1.0, 0.0);
    match &spec.kind {
        IntegrandKind::GenBeta {
            alpha,
            beta,
            alpha_t,
            beta_t,
        } => {
            let (al, be, alt, bet) = (*alpha, *beta, *alpha_t, *beta_t);
            let f = move |t: Complex64| -> Complex64 {
                holo_pair(t, al - 1.0, alt - 1.0) * holo_pair(one - t, be - 1.0, bet - 1.0)
            };
            Ok(PlaneIntegrand {
                f: Box::new(f),
                singular: vec![
                    Sing {
                        pos: Complex64::new(0.0, 0.0),
                        exponent: (al + alt).re - 2.0,
                    },
                    Sing {
                        pos: one,
                        exponent: (be + bet).re - 2.0,
                    },
                ],
                tail_exponent: (al + alt + be + bet).re - 4.0,
            })
        }
        IntegrandKind::Ip1 { params, z } => {
            let ps = params.clone();
            let zz = *z;
            let (a1, a1t) = (ps.a[0], ps.a_t[0]);
            let (b1, b1t) = (ps.b[0], ps.b_t[0]);
            let (a0, a0t) = (ps.a0, ps.a0_t);
            let f = move |t: Complex64| -> Complex64 {
                let mut v = holo_pair(t, a1 - 1.0, a1t - 1.0)
                    * holo_pair(one - t, b1 - a1 - 1.0, b1t - a1t - 1.0);
                if zz.norm() > 0.0 {
                    v *= holo_pair(one - zz * t, -a0, -a0t);
                }
                v
            };
            let mut singular = vec![
                Sing {
                    pos: Complex64::new(0.0, 0.0),
                    exponent: (a1 + a1t).re - 2.0,
                },
                Sing {
                    pos: one,
                    exponent: (b1 + b1t - a1 - a1t).re - 2.0,
                },
            ];
            let tail;
            if zz.norm() > 0.0 {
                singular.push(Sing {
                    pos: zz.finv(),
                    exponent: -(a0 + a0t).re,
                });
                tail = (b1 + b1t - a0 - a0t).re - 4.0;
            } else {
                tail = (b1 + b1t).re - 4.0;
            }
            Ok(PlaneIntegrand {
                f: Box::new(f),
                singular,
                tail_exponent: tail,
            })
        }
        IntegrandKind::Fourier { gamma, gamma_t } => {
            let (ga, gat) = (*gamma, *gamma_t);
            let f = move |t: Complex64| -> Complex64 {
                // branch: arg t in [0, 2 pi) exactly as in the closed form
                pair_pow(t.norm(), arg01(t), ga - 1.0, gat - 1.0)
                    * Complex64::from_polar((-eps * t.norm()).exp(), 2.0 * t.re)
            };
            Ok(PlaneIntegrand {
                f: Box::new(f),
                singular: vec![Sing {
                    pos: Complex64::new(0.0, 0.0),
                    exponent: (ga + gat).re - 2.0,
                }],
                // with damping the tail decays exponentially; -8 keeps the
                // inversion patch harmless
                tail_exponent: -8.0,
            })
        }
        IntegrandKind::Qcd { u, u_hat, q1 } => {
            let (uu, uh, q) = (*u, *u_hat, *q1);
            let half = Complex64::new(0.5, 0.0);
            let f = move |z: Complex64| -> Complex64 {
                let w = z * z - one;
                let osc = 2.0 * (q.conj() * z).re;
                holo_pair(w, -(uu + half), -(uh + half))
                    * Complex64::from_polar((-eps * z.norm()).exp(), osc)
            };
            let c = -(uu + uh).re - 1.0;
            Ok(PlaneIntegrand {
                f: Box::new(f),
                singular: vec![
                    Sing {
                        pos: one,
                        exponent: c,
                    },
                    Sing {
                        pos: -one,
                        exponent: c,
                    },
                ],
                tail_exponent: -8.0,
            })
        }
        IntegrandKind::AppendixA { params } => {
            let p = params.p;
            let (bp, bpt) = (params.bv(p), params.bt(p));
            let inner_exponent: f64;
            let f: Box<dyn Fn(Complex64) -> Complex64 + Sync + Send>;
            if p == 1 {
                // inner system is the bare (1-t)^{-a0} pair
                let (a0, a0t) = (params.a0, params.a0_t);
                inner_exponent = -(a0 + a0t).re;
                f = Box::new(move |t: Complex64| {
                    holo_pair(t, bp - 2.0, bpt - 2.0) * holo_pair(one - t, -a0, -a0t)
                });
            } else {
                let inner = params.drop_top_pair()?;
                inner.require_condition_c()?;
                let psi = (inner.psi() + inner.psi_t()).re;
                inner_exponent = psi.min(0.0);
                let inner_arc = inner.clone();
                f = Box::new(move |t: Complex64| {
                    let r = t.norm();
                    let theta = arg01(t);
                    let val = if r < 1.0 {
                        evaluate_small_z_with_phase(&inner_arc, t, theta, 1e-10)
                    } else {
                        evaluate_large_z_with_phase(&inner_arc, t, theta, 1e-10)
                    };
                    match val {
                        Ok(v) => holo_pair(t, bp - 2.0, bpt - 2.0) * v.value,
                        Err(_) => Complex64::new(0.0, 0.0),
                    }
                });
            }
            // tail: inner blocks decay like t^{-min Re(a_j + a~_j)}
            let min_a = (0..=p - 1)
                .map(|j| (params.av(j) + params.at(j)).re)
                .fold(f64::INFINITY, f64::min);
            let tail = if p == 1 {
                (bp + bpt).re - 4.0 - (params.a0 + params.a0_t).re
            } else {
                (bp + bpt).re - 4.0 - min_a
            };
            Ok(PlaneIntegrand {
                f,
                singular: vec![
                    Sing {
                        pos: Complex64::new(0.0, 0.0),
                        exponent: (bp + bpt).re - 4.0,
                    },
                    Sing {
                        pos: one,
                        exponent: inner_exponent,
                    },
                ],
                tail_exponent: tail,
            })
        }
        IntegrandKind::Ip2Iterated { .. } => Err(Error::BadInput(
            "the p = 2 integrand is four-dimensional; use the Monte Carlo path".into(),
        )),
    }
}

/// The 4-real-dimensional p = 2 integrand f(t1, t2).
pub fn ip2_integrand(
    params: &ParameterSet,
    z: Complex64,
) -> impl Fn(Complex64, Complex64) -> Complex64 + Sync + Send {
    let one = Complex64::new(1.0, 0.0);
    let ps = params.clone();
    move |t1: Complex64, t2: Complex64| -> Complex64 {
        let mut v = holo_pair(t1, ps.a[0] - 1.0, ps.a_t[0] - 1.0)
            * holo_pair(one - t1, ps.b[0] - ps.a[0] - 1.0, ps.b_t[0] - ps.a_t[0] - 1.0)
            * holo_pair(t2, ps.a[1] - 1.0, ps.a_t[1] - 1.0)
            * holo_pair(one - t2, ps.b[1] - ps.a[1] - 1.0, ps.b_t[1] - ps.a_t[1] - 1.0);
        v *= holo_pair(one - z * t1 * t2, -ps.a0, -ps.a0_t);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ip1_at_zero_is_gen_beta_integrand() {
        let ps = ParameterSet::new(
            (0.3, 0.0),
            (0.3, 0.0),
            &[(0.45, 0.0)],
            &[(1.3, 0.0)],
            &[(0.45, 0.0)],
            &[(0.3, 0.0)],
        )
        .unwrap();
        let spec = IntegrandSpec::ip1(ps.clone(), Complex64::new(0.0, 0.0)).unwrap();
        let g = plane_integrand(&spec, 0.0).unwrap();
        let spec2 = IntegrandSpec::gen_beta(
            ps.a[0],
            ps.b[0] - ps.a[0],
            ps.a_t[0],
            ps.b_t[0] - ps.a_t[0],
        )
        .unwrap();
        let g2 = plane_integrand(&spec2, 0.0).unwrap();
        for &t in &[
            Complex64::new(0.3, 0.4),
            Complex64::new(-1.2, 0.1),
            Complex64::new(2.0, -3.0),
        ] {
            assert!(((g.f)(t) - (g2.f)(t)).norm() < 1e-14 * (g2.f)(t).norm());
        }
    }

    #[test]
    fn window_rejection() {
        // Re(alpha + alpha~) <= 0 must be refused.
        assert!(IntegrandSpec::gen_beta(
            Complex64::new(0.4, 0.0),
            Complex64::new(0.45, 0.0),
            Complex64::new(-0.6, 0.0),
            Complex64::new(0.45, 0.0),
        )
        .is_err());
    }
}
