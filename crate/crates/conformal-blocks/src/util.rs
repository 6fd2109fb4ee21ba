//! Small numeric utilities: branch conventions, compensated summation,
//! extrapolation, and derivatives of holomorphic functions.

use num_complex::Complex64;

/// Argument of `z` in `[0, 2*pi)`. This is the branch convention used for
/// every power `z^alpha` in the block decompositions.
pub fn arg01(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// `z^w` with the argument of `z` taken in `[0, 2*pi)`.
pub fn pow_arg01(z: Complex64, w: Complex64) -> Complex64 {
    if z.norm_sqr() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let log = Complex64::new(z.norm().ln(), arg01(z));
    (w * log).exp()
}

/// The paired power `r^(e+et) * exp(i*theta*(e-et))` written as
/// `exp(e*(ln r + i theta) + et*(ln r - i theta))`.
///
/// This evaluates `z^e * zbar^et` with an explicitly tracked phase `theta`,
/// which is what keeps holomorphic/antiholomorphic pairs single-valued when
/// `e - et` is an integer and lets monodromy tests advance `theta` by `2*pi`
/// continuously.
pub fn pair_pow(r: f64, theta: f64, e: Complex64, et: Complex64) -> Complex64 {
    let lr = r.ln();
    let log_z = Complex64::new(lr, theta);
    let log_zbar = Complex64::new(lr, -theta);
    (e * log_z + et * log_zbar).exp()
}

/// If `z` is within `tol` of a real integer, return that integer.
pub fn near_integer(z: Complex64, tol: f64) -> Option<i64> {
    if z.im.abs() > tol {
        return None;
    }
    let n = z.re.round();
    if (z.re - n).abs() <= tol && n.abs() < 9.0e15 {
        Some(n as i64)
    } else {
        None
    }
}

/// Distance from `z` to the nearest real integer (in the complex plane).
pub fn dist_to_integer(z: Complex64) -> f64 {
    let n = z.re.round();
    Complex64::new(z.re - n, z.im).norm()
}

/// Kahan-compensated accumulator for complex values.
///
/// Used wherever strata or residue terms are reduced, so the reported value
/// does not depend on reduction order at the reported precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: Complex64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Pairwise sum of an ordered slice. Deterministic for a fixed slice,
/// independent of how the slice entries were produced.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// One Aitken delta-squared step on three successive estimates.
///
/// Exact when the sequence is `L + c*lambda^k`; this is the workhorse for
/// epsilon-damping ladders and w->1 limits where the leading correction has
/// a single unknown power.
pub fn aitken(s0: Complex64, s1: Complex64, s2: Complex64) -> Complex64 {
    let d1 = s1 - s0;
    let d2 = s2 - s1;
    let denom = d2 - d1;
    if denom.norm() < 1e-300 {
        return s2;
    }
    s2 - d2 * d2 / denom
}

/// Extrapolate a ladder of estimates to its limit with repeated Aitken steps.
/// Returns the refined limit and a crude error estimate (the last change).
pub fn aitken_limit(seq: &[Complex64]) -> (Complex64, f64) {
    assert!(seq.len() >= 2);
    if seq.len() == 2 {
        return (seq[1], (seq[1] - seq[0]).norm());
    }
    let mut cur: Vec<Complex64> = seq.to_vec();
    let mut last = *cur.last().unwrap();
    let mut err = (cur[cur.len() - 1] - cur[cur.len() - 2]).norm();
    while cur.len() >= 3 {
        let next: Vec<Complex64> = cur.windows(3).map(|w| aitken(w[0], w[1], w[2])).collect();
        let cand = *next.last().unwrap();
        err = (cand - last).norm();
        last = cand;
        cur = next;
    }
    (last, err)
}

/// Derivatives f^(0..=m) of a holomorphic function at `z`, from the 5-point
/// stencil {z, z±h, z±ih} (trapezoidal Cauchy integral on the 4-point
/// circle). Two radii are combined by Richardson extrapolation, which
/// cancels the leading O(h^4) term of the stencil.
///
/// `m` must be at most 3.
pub fn cauchy_derivs<F>(mut f: F, z: Complex64, h: f64, m: usize) -> Vec<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    assert!(m <= 3);
    let one_radius = |f: &mut F, h: f64| -> Vec<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let vals = [
            f(z + Complex64::new(h, 0.0)),
            f(z + i * h),
            f(z - Complex64::new(h, 0.0)),
            f(z - i * h),
        ];
        // d_m ~ m!/(4 h^m) * sum_k f(z + i^k h) i^{-km}
        let mut out = Vec::with_capacity(m + 1);
        for order in 0..=m {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, v) in vals.iter().enumerate() {
                let phase = -(std::f64::consts::FRAC_PI_2) * (k as f64) * (order as f64);
                acc += v * Complex64::from_polar(1.0, phase);
            }
            let fact: f64 = (1..=order).map(|q| q as f64).product();
            out.push(acc * fact / (4.0 * h.powi(order as i32)));
        }
        out
    };
    let lo = one_radius(&mut f, h);
    let hi = one_radius(&mut f, 0.5 * h);
    let f0 = f(z);
    // Stencil error is O(h^4) for every order; Richardson with ratio 2.
    let mut out: Vec<Complex64> = (0..=m)
        .map(|k| (hi[k] * 16.0 - lo[k]) / 15.0)
        .collect();
    out[0] = f0;
    out
}

/// Stirling numbers of the second kind S(k, m) for k, m <= `n`.
/// Used to expand powers of the Euler operator theta = z d/dz into
/// ordinary derivatives: theta^k f = sum_m S(k,m) z^m f^(m).
pub fn stirling2(n: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; n + 1]; n + 1];
    s[0][0] = 1.0;
    for k in 1..=n {
        for m in 1..=k {
            s[k][m] = s[k - 1][m - 1] + (m as f64) * s[k - 1][m];
        }
    }
    s
}

/// Coefficients of `prod_i (x + r_i)` in ascending powers of `x`.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k] += ck * r;
            next[k + 1] += ck;
        }
        c = next;
    }
    c
}
