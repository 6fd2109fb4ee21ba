//! Deterministic adaptive quadrature over the full plane for integrands
//! with isolated power-law singular points and a power-law tail.
//!
//! Layout: a square patch is carved around every marked singular point and
//! integrated in polar coordinates with a radial substitution r = R s^m
//! that cancels the r^c density; the remaining rectilinear midfield is
//! covered by rectangles refined adaptively by an embedded Gauss-Legendre
//! pair; the |t| > R tail is folded into a disk through t -> 1/u.

use crate::util::KahanSum;
use num_complex::Complex64;
use std::sync::OnceLock;

/// A marked singular point: |f| ~ |t - pos|^exponent locally, exponent > -2.
#[derive(Debug, Clone, Copy)]
pub struct Sing {
    pub pos: Complex64,
    pub exponent: f64,
}

/// A plane integrand with its singularity metadata.
pub struct Plane2D<'a> {
    pub f: &'a (dyn Fn(Complex64) -> Complex64 + Sync),
    pub singular: Vec<Sing>,
    /// |f| ~ |t|^tail_exponent as |t| -> infinity; must be < -2.
    pub tail_exponent: f64,
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }
}

/// Nodes and weights of n-point Gauss-Legendre on [-1, 1], cached.
pub fn gl_rule(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: [(usize, OnceLock<(Vec<f64>, Vec<f64>)>); 7] = [
        (6, OnceLock::new()),
        (8, OnceLock::new()),
        (10, OnceLock::new()),
        (12, OnceLock::new()),
        (16, OnceLock::new()),
        (20, OnceLock::new()),
        (24, OnceLock::new()),
    ];
    for (size, cell) in CACHE.iter() {
        if *size == n {
            return cell.get_or_init(|| compute_gl(n));
        }
    }
    panic!("unsupported Gauss-Legendre order {n}");
}

fn compute_gl(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess, Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Tensor Gauss-Legendre over a rectangle.
fn tensor_gl(
    f: &(dyn Fn(Complex64) -> Complex64 + Sync),
    r: &Rect,
    n: usize,
    evals: &mut u64,
) -> Complex64 {
    let (xs, ws) = gl_rule(n);
    let cx = 0.5 * (r.x0 + r.x1);
    let hx = 0.5 * (r.x1 - r.x0);
    let cy = 0.5 * (r.y0 + r.y1);
    let hy = 0.5 * (r.y1 - r.y0);
    let mut acc = KahanSum::new();
    for (i, &xi) in xs.iter().enumerate() {
        let x = cx + hx * xi;
        for (j, &yj) in xs.iter().enumerate() {
            let y = cy + hy * yj;
            acc.add(f(Complex64::new(x, y)) * (ws[i] * ws[j]));
        }
    }
    *evals += (n * n) as u64;
    acc.value() * (hx * hy)
}

/// Polar integration of f over the square of half-width w centered at
/// `pole`, with radial substitution r = R(theta) s^m cancelling the local
/// r^c density. `nt`/`nr` are the per-panel orders.
/// Substitution power for a local density r^c: smooth enough for GL, but
/// capped so r^c stays inside f64 range at the deepest radial node.
fn radial_power(c: f64) -> f64 {
    let smooth = (3.5 / (c + 2.0)).ceil();
    let overflow_cap = (240.0 / (3.3 * c.abs().max(1.0))).floor();
    smooth.clamp(1.0, overflow_cap.max(1.0))
}

/// Radii below this produce overflowing local powers; the omitted mass is
/// bounded by (floor/R)^{m(c+2)} relative to the patch.
fn radial_floor(c: f64) -> f64 {
    10f64.powf(-260.0 / c.abs().max(1.0))
}

#[allow(clippy::too_many_arguments)]
fn polar_square(
    f: &(dyn Fn(Complex64) -> Complex64 + Sync),
    pole: Complex64,
    w: f64,
    c: f64,
    nt: usize,
    nr: usize,
    evals: &mut u64,
) -> Complex64 {
    let m = radial_power(c);
    let floor = radial_floor(c);
    let (ts, tw) = gl_rule(nt).clone();
    let (rs, rw) = gl_rule(nr).clone();
    let quarter = std::f64::consts::FRAC_PI_2;
    let mut acc = KahanSum::new();
    // Four theta panels between the square's corner directions; within
    // each, the active edge distance R(theta) = w / cos(theta - axis).
    for k in 0..4 {
        let t0 = -std::f64::consts::FRAC_PI_4 + quarter * k as f64;
        let axis = quarter * k as f64;
        for (i, &ti) in ts.iter().enumerate() {
            let theta = t0 + quarter * 0.5 * (ti + 1.0);
            let rmax = w / (theta - axis).cos();
            // radial panels in s; the innermost one is graded
            for (s0, s1) in [(0.0, 0.05), (0.05, 0.3), (0.3, 1.0)] {
                for (j, &sj) in rs.iter().enumerate() {
                    let s: f64 = s0 + (s1 - s0) * 0.5 * (sj + 1.0);
                    let r = rmax * s.powf(m);
                    if r <= floor {
                        continue;
                    }
                    let t = pole + Complex64::from_polar(r, theta);
                    // r dr = rmax^2 m s^(2m-1) ds
                    let jac = rmax * rmax * m * s.powf(2.0 * m - 1.0);
                    let wgt = tw[i] * (quarter * 0.5) * rw[j] * ((s1 - s0) * 0.5);
                    let v = f(t) * (jac * wgt);
                    if v.is_finite() {
                        acc.add(v);
                    }
                    *evals += 1;
                }
            }
        }
    }
    acc.value()
}

/// Disk of radius `rad` around `pole` in polar coordinates (full-turn
/// theta panels), same radial substitution.
fn polar_disk(
    f: &(dyn Fn(Complex64) -> Complex64 + Sync),
    pole: Complex64,
    rad: f64,
    c: f64,
    nt: usize,
    nr: usize,
    evals: &mut u64,
) -> Complex64 {
    let m = radial_power(c);
    // The tail disk feeds 1/u into the integrand; keep |u| above the range
    // where the |u|^{-4} Jacobian loses representability.
    let floor = radial_floor(c).max(1e-64);
    let (ts, tw) = gl_rule(nt).clone();
    let (rs, rw) = gl_rule(nr).clone();
    let quarter = std::f64::consts::FRAC_PI_2;
    let mut acc = KahanSum::new();
    for k in 0..4 {
        let t0 = quarter * k as f64;
        for (i, &ti) in ts.iter().enumerate() {
            let theta = t0 + quarter * 0.5 * (ti + 1.0);
            for (s0, s1) in [(0.0, 0.05), (0.05, 0.3), (0.3, 1.0)] {
                for (j, &sj) in rs.iter().enumerate() {
                    let s: f64 = s0 + (s1 - s0) * 0.5 * (sj + 1.0);
                    let r = rad * s.powf(m);
                    if r <= floor {
                        continue;
                    }
                    let t = pole + Complex64::from_polar(r, theta);
                    let jac = rad * rad * m * s.powf(2.0 * m - 1.0);
                    let wgt = tw[i] * (quarter * 0.5) * rw[j] * ((s1 - s0) * 0.5);
                    let v = f(t) * (jac * wgt);
                    if v.is_finite() {
                        acc.add(v);
                    }
                    *evals += 1;
                }
            }
        }
    }
    acc.value()
}

/// Remove disjoint axis-aligned square holes from a rectangle, returning a
/// rectangle partition of the remainder (vertical slab decomposition).
fn partition_minus(domain: Rect, holes: &[Rect]) -> Vec<Rect> {
    let mut xs = vec![domain.x0, domain.x1];
    for h in holes {
        for x in [h.x0, h.x1] {
            if x > domain.x0 && x < domain.x1 {
                xs.push(x);
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    let mut out = Vec::new();
    for win in xs.windows(2) {
        let (xa, xb) = (win[0], win[1]);
        if xb - xa < 1e-12 {
            continue;
        }
        let xm = 0.5 * (xa + xb);
        // holes spanning this slab, sorted by y
        let mut spans: Vec<(f64, f64)> = holes
            .iter()
            .filter(|h| h.x0 <= xm && xm <= h.x1)
            .map(|h| (h.y0, h.y1))
            .collect();
        spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut y = domain.y0;
        for (hy0, hy1) in spans {
            if hy0 > y {
                out.push(Rect {
                    x0: xa,
                    x1: xb,
                    y0: y,
                    y1: hy0,
                });
            }
            y = y.max(hy1);
        }
        if domain.y1 > y {
            out.push(Rect {
                x0: xa,
                x1: xb,
                y0: y,
                y1: domain.y1,
            });
        }
    }
    out
}

struct Cell {
    rect: Rect,
    value: Complex64,
    err: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

fn eval_cell(f: &(dyn Fn(Complex64) -> Complex64 + Sync), rect: Rect, evals: &mut u64) -> Cell {
    let hi = tensor_gl(f, &rect, 12, evals);
    let lo = tensor_gl(f, &rect, 6, evals);
    Cell {
        rect,
        value: hi,
        err: (hi - lo).norm(),
    }
}

/// Adaptive integration over the whole plane. Returns (value, abs_error,
/// evaluations). The evaluation count never exceeds `budget` by more than
/// one refinement step.
pub fn integrate_plane(g: &Plane2D<'_>, budget: u64, tol: f64) -> (Complex64, f64, u64) {
    integrate_plane_with(g, budget, tol, None)
}

/// Like [`integrate_plane`], but when `outer` is Some(R) only |t| < R is
/// integrated (the caller owns the region beyond R, typically because the
/// tail is oscillatory rather than power-law).
pub fn integrate_plane_with(
    g: &Plane2D<'_>,
    budget: u64,
    tol: f64,
    outer: Option<f64>,
) -> (Complex64, f64, u64) {
    let mut evals: u64 = 0;
    let mut value = KahanSum::new();
    let mut fixed_err = 0.0f64;

    // Domain radius: keep every singular point at least distance 1 inside.
    let rmax = g
        .singular
        .iter()
        .map(|s| s.pos.norm())
        .fold(0.0f64, f64::max);
    let big_r = outer.unwrap_or(2.0 * rmax + 2.0);
    let a = big_r / std::f64::consts::SQRT_2;

    // Square patches around singular points.
    let mut holes = Vec::new();
    for (k, s) in g.singular.iter().enumerate() {
        let mut w = 0.5f64.min(0.35 * (big_r - s.pos.norm().max(0.0)));
        let edge = a - s.pos.re.abs().max(s.pos.im.abs());
        if edge > 0.0 {
            w = w.min(0.45 * edge);
        }
        for (j, s2) in g.singular.iter().enumerate() {
            if j != k {
                w = w.min(0.35 * (s.pos - s2.pos).norm());
            }
        }
        let hi = polar_square(g.f, s.pos, w, s.exponent, 16, 20, &mut evals);
        let lo = polar_square(g.f, s.pos, w, s.exponent, 8, 10, &mut evals);
        value.add(hi);
        fixed_err += (hi - lo).norm();
        holes.push(Rect {
            x0: s.pos.re - w,
            x1: s.pos.re + w,
            y0: s.pos.im - w,
            y1: s.pos.im + w,
        });
    }

    // Tail |t| > big_r through the inversion t -> 1/u (skipped when the
    // caller owns the far field).
    if outer.is_none() {
        let tail_f = move |u: Complex64| -> Complex64 {
            let n4 = u.norm_sqr();
            (g.f)(u.finv()) / (n4 * n4)
        };
        let c_u = -g.tail_exponent - 4.0;
        let hi = polar_disk(&tail_f, Complex64::new(0.0, 0.0), 1.0 / big_r, c_u, 16, 20, &mut evals);
        let lo = polar_disk(&tail_f, Complex64::new(0.0, 0.0), 1.0 / big_r, c_u, 8, 10, &mut evals);
        value.add(hi);
        fixed_err += (hi - lo).norm();
    }

    // The midfield square [-a, a]^2 is inscribed in the circle of radius
    // big_r; the four circular segments between square and circle are
    // integrated as explicit polar wedges so every region is disjoint.
    {
        let (ts, tw) = gl_rule(16).clone();
        let (rs, rw) = gl_rule(12).clone();
        let mut seg = KahanSum::new();
        let quarter = std::f64::consts::FRAC_PI_2;
        for k in 0..4 {
            let axis = quarter * k as f64;
            for (i, &ti) in ts.iter().enumerate() {
                let theta = axis - std::f64::consts::FRAC_PI_4
                    + quarter * 0.5 * (ti + 1.0);
                let r0 = a / (theta - axis).cos();
                for (j, &sj) in rs.iter().enumerate() {
                    let r = r0 + (big_r - r0) * 0.5 * (sj + 1.0);
                    let t = Complex64::from_polar(r, theta);
                    let wgt = tw[i] * (quarter * 0.5) * rw[j] * ((big_r - r0) * 0.5);
                    seg.add((g.f)(t) * (r * wgt));
                    evals += 1;
                }
            }
        }
        value.add(seg.value());
        // smooth far-field wedge; fold a crude estimate into fixed error
        fixed_err += 1e-12 * seg.value().norm();
    }

    // Midfield: [-a, a]^2 minus the patch squares, adaptively refined.
    let domain = Rect {
        x0: -a,
        x1: a,
        y0: -a,
        y1: a,
    };
    let rects = partition_minus(domain, &holes);
    let mut heap: std::collections::BinaryHeap<Cell> = std::collections::BinaryHeap::new();
    let mut cell_err = 0.0f64;
    let mut cell_val = Complex64::new(0.0, 0.0);
    for r in rects.into_iter().filter(|r| r.area() > 0.0) {
        let c = eval_cell(g.f, r, &mut evals);
        cell_err += c.err;
        cell_val += c.value;
        heap.push(c);
    }

    loop {
        let total_err = fixed_err + cell_err;
        let total_val = value.value() + cell_val;
        let done = total_err <= tol * total_val.norm().max(1e-300) || evals >= budget;
        if done || heap.is_empty() {
            // Recompute the cell contribution in a deterministic order so
            // the reported value does not carry incremental drift.
            let mut ordered: Vec<&Cell> = heap.iter().collect();
            ordered.sort_by(|p, q| {
                (p.rect.x0, p.rect.y0, p.rect.x1)
                    .partial_cmp(&(q.rect.x0, q.rect.y0, q.rect.x1))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let mut v = value;
            let mut e = fixed_err;
            for c in ordered {
                v.add(c.value);
                e += c.err;
            }
            return (v.value(), e, evals);
        }
        let cell = heap.pop().unwrap();
        cell_err -= cell.err;
        cell_val -= cell.value;
        let r = cell.rect;
        let xm = 0.5 * (r.x0 + r.x1);
        let ym = 0.5 * (r.y0 + r.y1);
        for sub in [
            Rect { x0: r.x0, x1: xm, y0: r.y0, y1: ym },
            Rect { x0: xm, x1: r.x1, y0: r.y0, y1: ym },
            Rect { x0: r.x0, x1: xm, y0: ym, y1: r.y1 },
            Rect { x0: xm, x1: r.x1, y0: ym, y1: r.y1 },
        ] {
            let c = eval_cell(g.f, sub, &mut evals);
            cell_err += c.err;
            cell_val += c.value;
            heap.push(c);
        }
    }
}
