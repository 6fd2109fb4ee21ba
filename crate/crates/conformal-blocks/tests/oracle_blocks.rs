//! Closed forms against the brute-force quadrature oracle.

mod common;

use conformal_blocks::blocks::{
    evaluate_large_z, evaluate_small_z, generalized_beta, lambda_coeffs, ParameterSet,
};
use conformal_blocks::oracle::{integrate, oracle_limits, IntegrandSpec};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn gen_beta_matches_quadrature() {
    for (k, &(ar, ai, br, bi, atr, ati, btr, bti)) in
        common::gen_beta_quadruples().iter().enumerate()
    {
        let (al, be, alt, bet) = (c(ar, ai), c(br, bi), c(atr, ati), c(btr, bti));
        let closed = generalized_beta(al, be, alt, bet).unwrap();
        let spec = IntegrandSpec::gen_beta(al, be, alt, bet).unwrap();
        let est = integrate(&spec, 2_000_000, 1e-8).unwrap();
        let rel = (est.value - closed).norm() / closed.norm();
        assert!(
            rel < 1e-5,
            "quadruple {k}: closed {closed} oracle {} rel {rel:.3e} err {:.3e}",
            est.value,
            est.abs_error
        );
    }
}

#[test]
fn ip1_at_zero_factorizes() {
    // At z = 0 the integral is the lambda_0 product with no z-dependence.
    let ps = ParameterSet::new(
        (0.45, 0.0),
        (0.45, 0.0),
        &[(0.35, 0.0)],
        &[(1.30, 0.0)],
        &[(0.35, 0.0)],
        &[(0.30, 0.0)],
    )
    .unwrap();
    let lam0 = lambda_coeffs(&ps).unwrap().coeffs[0];
    let spec = IntegrandSpec::ip1(ps, c(0.0, 0.0)).unwrap();
    let est = integrate(&spec, 2_000_000, 1e-8).unwrap();
    let rel = (est.value - lam0).norm() / lam0.norm();
    assert!(rel < 1e-6, "lambda_0 {lam0} oracle {} rel {rel:.3e}", est.value);
}

#[test]
fn ip1_small_z_matches_block_sum() {
    let z = c(0.4, 0.3);
    for (k, ps) in common::p1_windowed_sets().into_iter().enumerate() {
        let closed = evaluate_small_z(&ps, z, 1e-11).unwrap();
        let spec = IntegrandSpec::ip1(ps, z).unwrap();
        let est = integrate(&spec, 2_000_000, 1e-7).unwrap();
        let diff = (est.value - closed.value).norm();
        let budget = (1e-3 * closed.value.norm()).max(3.0 * est.abs_error);
        assert!(
            diff <= budget,
            "set {k}: closed {} oracle {} diff {diff:.3e} budget {budget:.3e}",
            closed.value,
            est.value
        );
    }
}

#[test]
fn ip1_large_z_matches_block_sum() {
    // z = -3 (arg pi) and a real z > 1 probe the continuation.
    let ps = common::p1_windowed_sets().remove(1);
    for z in [c(-3.0, 0.0), c(2.4, 1.1)] {
        let closed = evaluate_large_z(&ps, z, 1e-11).unwrap();
        let spec = IntegrandSpec::ip1(ps.clone(), z).unwrap();
        let est = integrate(&spec, 2_000_000, 1e-7).unwrap();
        let diff = (est.value - closed.value).norm();
        let budget = (1e-3 * closed.value.norm()).max(3.0 * est.abs_error);
        assert!(
            diff <= budget,
            "z {z}: closed {} oracle {} diff {diff:.3e} budget {budget:.3e}",
            closed.value,
            est.value
        );
    }
}

#[test]
fn lambda0_recovered_from_zero_limit() {
    // Re(b + b~) < 2 so every j >= 1 block dies as z -> 0.
    let ps = ParameterSet::new(
        (0.45, 0.0),
        (0.45, 0.0),
        &[(0.35, 0.0)],
        &[(1.30, 0.0)],
        &[(0.35, 0.0)],
        &[(0.30, 0.0)],
    )
    .unwrap();
    let lam = lambda_coeffs(&ps).unwrap().coeffs;
    let spec = IntegrandSpec::ip1(ps, c(0.5, 0.0)).unwrap();
    let got = oracle_limits(&spec, (c(0.0, 0.0), c(0.0, 0.0)), 2_000_000, 1e-8).unwrap();
    let rel = (got - lam[0]).norm() / lam[0].norm();
    assert!(rel < 2e-2, "lambda_0 {} limit {got} rel {rel:.3e}", lam[0]);
}

#[test]
fn lambda1_recovered_from_zero_limit_settles_sign() {
    // Re(b + b~) > 2 so the j = 1 block dominates z^{b-1} zbar^{b~-1} I.
    // This pins the sign convention of the lambda_1 phase against the
    // defining integral.
    let ps = ParameterSet::new(
        (0.52, 0.0),
        (0.52, 0.0),
        &[(0.35, 0.0)],
        &[(1.45, 0.0)],
        &[(0.35, 0.0)],
        &[(1.45, 0.0)],
    )
    .unwrap();
    let lam = lambda_coeffs(&ps).unwrap().coeffs;
    let (b1, b1t) = (ps.b[0], ps.b_t[0]);
    let spec = IntegrandSpec::ip1(ps, c(0.5, 0.0)).unwrap();
    let got = oracle_limits(&spec, (b1 - 1.0, b1t - 1.0), 2_000_000, 1e-8).unwrap();
    let rel = (got - lam[1]).norm() / lam[1].norm();
    assert!(rel < 2e-2, "lambda_1 {} limit {got} rel {rel:.3e}", lam[1]);
}
