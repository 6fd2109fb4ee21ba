//! Random admissible parameter sets for tests and verification suites.

use super::params::ParameterSet;
use rand::Rng;

/// Controls for [`sample_admissible`].
#[derive(Debug, Clone, Copy)]
pub struct SampleConfig {
    pub p: usize,
    /// Require the oracle convergence windows (integrability of the
    /// defining integral) on top of Condition C.
    pub require_window: bool,
    /// Magnitude of imaginary parts (0 for real exponents).
    pub im_scale: f64,
    /// Allow nonzero integer shifts between tilded and untilded exponents.
    pub allow_shifts: bool,
}

impl SampleConfig {
    pub fn real_windowed(p: usize) -> Self {
        SampleConfig {
            p,
            require_window: true,
            im_scale: 0.0,
            allow_shifts: true,
        }
    }

    pub fn complex_generic(p: usize) -> Self {
        SampleConfig {
            p,
            require_window: false,
            im_scale: 0.25,
            allow_shifts: true,
        }
    }
}

/// Draw a parameter set satisfying Condition C (and optionally the
/// convergence windows) by rejection. Panics if 10_000 draws fail, which
/// does not happen for the supported p <= 5.
pub fn sample_admissible<R: Rng>(rng: &mut R, cfg: SampleConfig) -> ParameterSet {
    for _ in 0..10_000 {
        let p = cfg.p;
        let im = |rng: &mut R| {
            if cfg.im_scale > 0.0 {
                rng.gen_range(-cfg.im_scale..cfg.im_scale)
            } else {
                0.0
            }
        };
        let a0 = (rng.gen_range(0.15..0.85), im(rng));
        let mut a = Vec::with_capacity(p);
        let mut b = Vec::with_capacity(p);
        for _ in 0..p {
            a.push((rng.gen_range(0.15..0.85), im(rng)));
            b.push((rng.gen_range(1.08..1.85), im(rng)));
        }
        let shift = |rng: &mut R| -> f64 {
            if cfg.allow_shifts {
                [0.0, 0.0, 1.0, -1.0][rng.gen_range(0..4)]
            } else {
                0.0
            }
        };
        let a0_t = (a0.0 - if cfg.require_window { 0.0 } else { shift(rng) }, a0.1);
        let a_t: Vec<(f64, f64)> = a
            .iter()
            .map(|&(re, imv)| {
                let s = if cfg.require_window { 0.0 } else { shift(rng) };
                (re - s, imv)
            })
            .collect();
        let b_t: Vec<(f64, f64)> = b
            .iter()
            .map(|&(re, imv)| {
                let s = shift(rng).max(0.0); // b~ = b or b - 1 keeps windows open
                (re - s, imv)
            })
            .collect();

        let ps = match ParameterSet::new(a0, a0_t, &a, &b, &a_t, &b_t) {
            Ok(ps) => ps,
            Err(_) => continue,
        };
        let report = ps.validate();
        if !report.passes() {
            continue;
        }
        // keep clear of the near-degenerate warning band as well
        if !report.warnings.is_empty() {
            continue;
        }
        if cfg.require_window && !(report.windows.all() && report.windows.psi_ok) {
            continue;
        }
        return ps;
    }
    panic!("failed to sample an admissible parameter set");
}
