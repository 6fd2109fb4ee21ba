//! Stratified Monte Carlo with importance densities concentrated at the
//! marked singular points. Strata own independent counter-based random
//! streams and are reduced in index order, so results are bit-identical
//! for any worker count.

use super::integrand::{ip2_integrand, plane_integrand, IntegrandKind, IntegrandSpec};
use super::quad::Sing;
use crate::util::KahanSum;
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const N_STRATA: u64 = 128;

/// Mixture importance density on the plane: one power-law component per
/// singular point, a power-law tail component, and a uniform disk.
#[derive(Debug, Clone)]
pub struct PlaneMixture {
    sing: Vec<(Complex64, f64, f64)>, // (pos, exponent c > -2, radius)
    tail_exponent: f64,               // c_inf < -2
    big_r: f64,
    weights: Vec<f64>, // sing..., tail, uniform
}

impl PlaneMixture {
    pub fn new(singular: &[Sing], tail_exponent: f64) -> Self {
        let rmax = singular.iter().map(|s| s.pos.norm()).fold(0.0f64, f64::max);
        let big_r = 2.0 * rmax + 2.0;
        let mut sing = Vec::new();
        for (k, s) in singular.iter().enumerate() {
            let mut rad = 0.5f64;
            for (j, s2) in singular.iter().enumerate() {
                if j != k {
                    rad = rad.min(0.45 * (s.pos - s2.pos).norm());
                }
            }
            sing.push((s.pos, s.exponent, rad));
        }
        let n = sing.len();
        let mut weights = vec![0.0; n + 2];
        let w_sing = if n > 0 { 0.45 / n as f64 } else { 0.0 };
        for w in weights.iter_mut().take(n) {
            *w = w_sing;
        }
        weights[n] = 0.15; // tail
        weights[n + 1] = 1.0 - 0.15 - w_sing * n as f64; // uniform disk
        PlaneMixture {
            sing,
            tail_exponent,
            big_r,
            weights,
        }
    }

    /// Draw a point and return it with its mixture density.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> (Complex64, f64) {
        let n = self.sing.len();
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut comp = n + 1;
        for (i, &w) in self.weights.iter().enumerate() {
            acc += w;
            if u < acc {
                comp = i;
                break;
            }
        }
        let t = if comp < n {
            let (pos, c, rad) = self.sing[comp];
            // radial density ~ r^{c+1} dr on (0, rad]:
            // r = rad * U^{1/(c+2)}
            let r = rad * rng.gen::<f64>().powf(1.0 / (c + 2.0));
            let th = rng.gen::<f64>() * std::f64::consts::TAU;
            pos + Complex64::from_polar(r, th)
        } else if comp == n {
            // tail: density ~ r^{c_inf+1} dr on [big_r, inf)
            let c = self.tail_exponent;
            let r = self.big_r * rng.gen::<f64>().powf(1.0 / (c + 2.0));
            let th = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, th)
        } else {
            // uniform on the disk of radius big_r
            let r = self.big_r * rng.gen::<f64>().sqrt();
            let th = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, th)
        };
        (t, self.density(t))
    }

    /// Density of the full mixture at `t`.
    pub fn density(&self, t: Complex64) -> f64 {
        let n = self.sing.len();
        let tau = std::f64::consts::TAU;
        let mut p = 0.0;
        for (i, &(pos, c, rad)) in self.sing.iter().enumerate() {
            let r = (t - pos).norm();
            if r < rad && r > 0.0 {
                // normalized: (c+2) r^c / (2 pi rad^{c+2})
                p += self.weights[i] * (c + 2.0) * r.powf(c) / (tau * rad.powf(c + 2.0));
            }
        }
        let r = t.norm();
        if r >= self.big_r {
            let c = self.tail_exponent;
            p += self.weights[n] * (-(c + 2.0)) * r.powf(c) / (tau * self.big_r.powf(c + 2.0));
        }
        if r < self.big_r {
            p += self.weights[n + 1] / (std::f64::consts::PI * self.big_r * self.big_r);
        }
        p
    }
}

fn stratum_seed(seed: u64, stratum: u64) -> u64 {
    // splitmix64 step keyed by (seed, stratum)
    let mut x = seed ^ stratum.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

struct StratumOut {
    sum: Complex64,
    count: u64,
}

/// Stratified-MC result: value, 3-sigma error from the stratum scatter,
/// and the evaluation count.
pub struct McEstimate {
    pub value: Complex64,
    pub abs_error: f64,
    pub n_evals: u64,
}

fn reduce(strata: Vec<StratumOut>) -> McEstimate {
    let n_total: u64 = strata.iter().map(|s| s.count).sum();
    let mut mean_acc = KahanSum::new();
    for s in &strata {
        mean_acc.add(s.sum);
    }
    let mean = mean_acc.value() / n_total as f64;
    // scatter of the per-stratum means
    let s_count = strata.len() as f64;
    let mut var = 0.0f64;
    for s in &strata {
        let m = s.sum / s.count as f64;
        var += (m - mean).norm_sqr();
    }
    let se = (var / (s_count * (s_count - 1.0))).sqrt();
    McEstimate {
        value: mean,
        abs_error: 3.0 * se,
        n_evals: n_total,
    }
}

/// 2D stratified Monte Carlo for a plane integrand.
pub fn mc_plane(spec: &IntegrandSpec, budget: u64, seed: u64) -> Result<McEstimate> {
    let g = plane_integrand(spec, 0.0)?;
    let mixture = PlaneMixture::new(&g.singular, g.tail_exponent);
    let per = (budget / N_STRATA).max(64);
    let f = &g.f;
    let mixture = &mixture;
    let mut slots: Vec<Option<StratumOut>> = (0..N_STRATA).map(|_| None).collect();
    slots
        .par_iter_mut()
        .enumerate()
        .for_each(|(s, slot)| {
            let mut rng = ChaCha8Rng::seed_from_u64(stratum_seed(seed, s as u64));
            let mut acc = KahanSum::new();
            for _ in 0..per {
                let (t, p) = mixture.sample(&mut rng);
                if p > 0.0 {
                    let w = f(t) / p;
                    if w.is_finite() {
                        acc.add(w);
                    }
                }
            }
            *slot = Some(StratumOut {
                sum: acc.value(),
                count: per,
            });
        });
    Ok(reduce(slots.into_iter().map(|s| s.unwrap()).collect()))
}

/// 4D stratified Monte Carlo for the p = 2 iterated integrand: product
/// mixture over (t1, t2).
pub fn mc_ip2(spec: &IntegrandSpec, budget: u64, seed: u64) -> Result<McEstimate> {
    let (params, z) = match &spec.kind {
        IntegrandKind::Ip2Iterated { params, z } => (params.clone(), *z),
        _ => return Err(Error::BadInput("mc_ip2 expects the Ip2Iterated kind".into())),
    };
    let f = ip2_integrand(&params, z);
    let one = Complex64::new(1.0, 0.0);
    let mix = |i: usize| -> PlaneMixture {
        let (ai, ait) = (params.a[i], params.a_t[i]);
        let (bi, bit) = (params.b[i], params.b_t[i]);
        PlaneMixture::new(
            &[
                Sing {
                    pos: Complex64::new(0.0, 0.0),
                    exponent: (ai + ait).re - 2.0,
                },
                Sing {
                    pos: one,
                    exponent: (bi + bit - ai - ait).re - 2.0,
                },
            ],
            (bi + bit - params.a0 - params.a0_t).re - 4.0,
        )
    };
    let m1 = mix(0);
    let m2 = mix(1);
    let per = (budget / N_STRATA).max(64);

    let mut slots: Vec<Option<StratumOut>> = (0..N_STRATA).map(|_| None).collect();
    slots
        .par_iter_mut()
        .enumerate()
        .for_each(|(s, slot)| {
            let mut rng = ChaCha8Rng::seed_from_u64(stratum_seed(seed, s as u64));
            let mut acc = KahanSum::new();
            for _ in 0..per {
                let (t1, p1) = m1.sample(&mut rng);
                let (t2, p2) = m2.sample(&mut rng);
                let p = p1 * p2;
                if p > 0.0 {
                    let w = f(t1, t2) / p;
                    if w.is_finite() {
                        acc.add(w);
                    }
                }
            }
            *slot = Some(StratumOut {
                sum: acc.value(),
                count: per,
            });
        });
    Ok(reduce(slots.into_iter().map(|s| s.unwrap()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixture_density_normalizes() {
        // Monte Carlo self-check: E[1/p] over samples of p equals the plane
        // area weighting, i.e. sampling t ~ p and averaging g(t)/p(t) for a
        // known g integrates g. Use a Gaussian.
        let mixture = PlaneMixture::new(
            &[Sing {
                pos: Complex64::new(0.3, 0.0),
                exponent: -1.2,
            }],
            -5.0,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut acc = 0.0;
        let n = 200_000;
        for _ in 0..n {
            let (t, p) = mixture.sample(&mut rng);
            acc += (-t.norm_sqr()).exp() / p;
        }
        let got = acc / n as f64;
        let want = std::f64::consts::PI;
        assert!(
            (got - want).abs() < 0.05,
            "mixture-sampled Gaussian integral {got} vs {want}"
        );
    }

    #[test]
    fn determinism_across_worker_counts() {
        let spec = IntegrandSpec::gen_beta(
            Complex64::new(0.4, 0.0),
            Complex64::new(0.45, 0.0),
            Complex64::new(0.4, 0.0),
            Complex64::new(0.45, 0.0),
        )
        .unwrap();
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = pool1.install(|| mc_plane(&spec, 200_000, 7).unwrap());
        let b = pool4.install(|| mc_plane(&spec, 200_000, 7).unwrap());
        assert_eq!(a.value, b.value);
        assert_eq!(a.abs_error, b.abs_error);
    }
}
