//! Minimal double-double arithmetic used as an independent high-precision
//! oracle for series values. Accuracy ~1e-30 relative, far beyond what the
//! f64 implementations claim, and entirely separate from their code paths.

#![allow(dead_code)]

/// A double-double number hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// pi to double-double precision.
    pub fn pi() -> Dd {
        Dd {
            hi: std::f64::consts::PI,
            lo: 1.2246467991473532e-16,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

pub fn add(a: Dd, b: Dd) -> Dd {
    let s = two_sum(a.hi, b.hi);
    let lo = s.lo + a.lo + b.lo;
    quick_two_sum(s.hi, lo)
}

pub fn sub(a: Dd, b: Dd) -> Dd {
    add(a, neg(b))
}

pub fn neg(a: Dd) -> Dd {
    Dd { hi: -a.hi, lo: -a.lo }
}

pub fn mul(a: Dd, b: Dd) -> Dd {
    let p = two_prod(a.hi, b.hi);
    let lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    quick_two_sum(p.hi, lo)
}

pub fn div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi / b.hi;
    let r = sub(a, mul(Dd::from(q1), b));
    let q2 = r.hi / b.hi;
    let r2 = sub(r, mul(Dd::from(q2), b));
    let q3 = r2.hi / b.hi;
    add(add(Dd::from(q1), Dd::from(q2)), Dd::from(q3))
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ddc {
    pub re: Dd,
    pub im: Dd,
}

impl Ddc {
    pub const ZERO: Ddc = Ddc { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Ddc = Ddc {
        re: Dd { hi: 1.0, lo: 0.0 },
        im: Dd::ZERO,
    };

    pub fn new(re: f64, im: f64) -> Ddc {
        Ddc {
            re: Dd::from(re),
            im: Dd::from(im),
        }
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

pub fn cadd(a: Ddc, b: Ddc) -> Ddc {
    Ddc {
        re: add(a.re, b.re),
        im: add(a.im, b.im),
    }
}

pub fn csub(a: Ddc, b: Ddc) -> Ddc {
    Ddc {
        re: sub(a.re, b.re),
        im: sub(a.im, b.im),
    }
}

pub fn cmul(a: Ddc, b: Ddc) -> Ddc {
    Ddc {
        re: sub(mul(a.re, b.re), mul(a.im, b.im)),
        im: add(mul(a.re, b.im), mul(a.im, b.re)),
    }
}

pub fn cdiv(a: Ddc, b: Ddc) -> Ddc {
    let den = add(mul(b.re, b.re), mul(b.im, b.im));
    let num = cmul(
        a,
        Ddc {
            re: b.re,
            im: neg(b.im),
        },
    );
    Ddc {
        re: div(num.re, den),
        im: div(num.im, den),
    }
}

pub fn cscale(a: Ddc, s: f64) -> Ddc {
    Ddc {
        re: mul(a.re, Dd::from(s)),
        im: mul(a.im, Dd::from(s)),
    }
}

/// sin(w) by Taylor summation in double-double complex.
pub fn dd_sin(w: Ddc) -> Ddc {
    let w2 = cmul(w, w);
    let mut term = w;
    let mut sum = w;
    for k in 1..60 {
        let denom = (2 * k) as f64 * (2 * k + 1) as f64;
        term = cscale(cmul(term, w2), -1.0 / denom);
        sum = cadd(sum, term);
        if term.to_c64().norm() < 1e-35 * sum.to_c64().norm().max(1e-30) {
            break;
        }
    }
    sum
}

/// Generalized hypergeometric series at double-double precision with a
/// doubled term cap, by direct term recursion. Parameters and argument are
/// exact f64 inputs.
pub fn dd_pfq(
    upper: &[num_complex::Complex64],
    lower: &[num_complex::Complex64],
    z: num_complex::Complex64,
) -> num_complex::Complex64 {
    let zc = Ddc::new(z.re, z.im);
    let mut term = Ddc::ONE;
    let mut sum = Ddc::ONE;
    for k in 0..40_000u32 {
        let kf = k as f64;
        let mut t = cmul(term, zc);
        for &a in upper {
            t = cmul(t, Ddc::new(a.re + kf, a.im));
        }
        for &b in lower {
            t = cdiv(t, Ddc::new(b.re + kf, b.im));
        }
        t = cdiv(t, Ddc::new(kf + 1.0, 0.0));
        term = t;
        sum = cadd(sum, term);
        if term.to_c64().norm() < 1e-25 * sum.to_c64().norm().max(1e-30) {
            break;
        }
    }
    sum.to_c64()
}

/// Bessel J ascending series at double-double precision. The (z/2)^nu /
/// Gamma(nu+1) prefactor is taken from the f64 implementation's own
/// building blocks would defeat independence, so the caller supplies it;
/// this returns sum_k (-1)^k (z/2)^{2k} / (k! (nu+1)_k).
pub fn dd_bessel_series(
    nu: num_complex::Complex64,
    z: num_complex::Complex64,
) -> num_complex::Complex64 {
    let half = Ddc::new(0.5 * z.re, 0.5 * z.im);
    let q = cmul(half, half);
    let mut term = Ddc::ONE;
    let mut sum = Ddc::ONE;
    for k in 0..2000u32 {
        let kf = k as f64;
        let mut t = cmul(term, q);
        t = cdiv(t, Ddc::new(kf + 1.0, 0.0));
        t = cdiv(t, Ddc::new(nu.re + kf + 1.0, nu.im));
        t = cscale(t, -1.0);
        term = t;
        sum = cadd(sum, term);
        if term.to_c64().norm() < 1e-28 * sum.to_c64().norm().max(1e-30) {
            break;
        }
    }
    sum.to_c64()
}
