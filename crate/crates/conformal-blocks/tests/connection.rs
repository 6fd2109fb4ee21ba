//! Internal-consistency checks of the large-z connection coefficients:
//! the full (p+1)x(p+1) matrix assembled from the Mellin-Barnes
//! re-expansion must be diagonal, its diagonal must match the closed-form
//! coefficients, and the nu / mu factorizations must reproduce the same
//! blocks after G-renormalization.

use conformal_blocks::blocks::{
    connection_matrix, evaluate_large_z, evaluate_small_z, g_basis_coeffs, lambda_coeffs,
    large_z_coeffs, mu_top, nu_coeffs, sampling, v_norm, w_norm, ParameterSet,
};
use conformal_blocks::util::near_integer;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn assembled_vs_closed(ps: &ParameterSet, tol_offdiag: f64, tol_diag: f64) {
    let jmat = connection_matrix(ps).unwrap();
    let closed = large_z_coeffs(ps).unwrap().coeffs;
    let diag_scale: f64 = (0..=ps.p)
        .map(|n| jmat[n][n].norm())
        .fold(0.0f64, f64::max);
    assert!(diag_scale > 0.0);
    for n in 0..=ps.p {
        for k in 0..=ps.p {
            if n == k {
                let err = (jmat[n][n] - closed[n]).norm() / closed[n].norm();
                assert!(
                    err < tol_diag,
                    "p={} diagonal {n}: assembled {} closed {} rel err {err:.3e}",
                    ps.p,
                    jmat[n][n],
                    closed[n]
                );
            } else {
                assert!(
                    jmat[n][k].norm() < tol_offdiag * diag_scale,
                    "p={} off-diagonal ({n},{k}) = {} vs scale {diag_scale:.3e}",
                    ps.p,
                    jmat[n][k]
                );
            }
        }
    }
}

#[test]
fn connection_matrix_is_diagonal_p1_to_p3() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in 1..=3 {
        for _ in 0..4 {
            let ps = sampling::sample_admissible(&mut rng, sampling::SampleConfig::complex_generic(p));
            assembled_vs_closed(&ps, 1e-10, 1e-10);
        }
    }
}

#[test]
fn g_basis_renormalization_reproduces_lambda() {
    // mu_{p+1} mu_j V_j V~_j = lambda_j u_j u~_j, coefficient by coefficient.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in 1..=3 {
        let ps = sampling::sample_admissible(&mut rng, sampling::SampleConfig::complex_generic(p));
        let lambda = lambda_coeffs(&ps).unwrap().coeffs;
        let mu = g_basis_coeffs(&ps).unwrap().coeffs;
        for j in 0..=p {
            let norm = v_norm(&ps, j, false).unwrap() * v_norm(&ps, j, true).unwrap();
            let got = mu[j] * norm;
            let err = (got - lambda[j]).norm() / lambda[j].norm();
            assert!(
                err < 1e-11,
                "p={p} j={j}: mu-route {got} lambda {} rel {err:.3e}",
                lambda[j]
            );
        }
    }
}

#[test]
fn nu_renormalization_reproduces_large_z_diagonal() {
    // nu_j W_j W~_j = J_jj e^{i pi (a_j - a~_j)} z^{-a_j} zbar^{-a~_j} F F~.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for p in 1..=3 {
        let ps = sampling::sample_admissible(&mut rng, sampling::SampleConfig::complex_generic(p));
        let jdiag = large_z_coeffs(&ps).unwrap().coeffs;
        let nu = nu_coeffs(&ps).unwrap().coeffs;
        for j in 0..=p {
            let norm = w_norm(&ps, j, false).unwrap() * w_norm(&ps, j, true).unwrap();
            let phase = parity(near_integer(ps.av(j) - ps.at(j), 1e-6).unwrap());
            let got = nu[j] * norm;
            let want = jdiag[j] * phase;
            let err = (got - want).norm() / want.norm();
            assert!(
                err < 1e-11,
                "p={p} j={j}: nu-route {got} J-route {want} rel {err:.3e}"
            );
        }
    }
}

#[test]
fn nu_is_mu_with_a_b_interchanged() {
    // The z -> 1/z symmetry: nu_j / mu_{p+1} equals the mu_j sine product
    // with every (b_j - a_i) replaced by (b_i - a_j) and (b_j - b_i) by
    // (a_i - a_j), times (-1)^{s - s~}.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let ps = sampling::sample_admissible(&mut rng, sampling::SampleConfig::complex_generic(2));
    let top = mu_top(&ps).unwrap();
    let nu = nu_coeffs(&ps).unwrap().coeffs;
    let sign = parity(near_integer(ps.psi() - ps.psi_t(), 1e-6).unwrap());
    let s = |z: Complex64| conformal_blocks::specfun::sin_pi(z).unwrap();
    for j in 0..=ps.p {
        let mut val = Complex64::new(1.0, 0.0);
        for i in 0..=ps.p {
            val *= s(ps.bv(i) - ps.av(j));
        }
        for i in 0..=ps.p {
            if i != j {
                val /= s(ps.av(i) - ps.av(j));
            }
        }
        let want = sign * top * val;
        assert!((nu[j] - want).norm() < 1e-12 * want.norm());
    }
}

#[test]
fn small_and_large_agree_across_unit_circle() {
    // Continuity probe: |z| = 1 -+ 1e-4 on a ray away from the cuts. The
    // series tails are honest there; agreement is asserted against them.
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let ps = sampling::sample_admissible(&mut rng, sampling::SampleConfig::complex_generic(1));
    let dir = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2);
    let inner = evaluate_small_z(&ps, dir * 0.9999, 1e-12).unwrap();
    let outer = evaluate_large_z(&ps, dir * 1.0001, 1e-12).unwrap();
    let scale = inner.value.norm();
    let diff = (inner.value - outer.value).norm();
    let budget = 3.0 * (inner.tail_bound + outer.tail_bound) + 2e-4 * scale;
    assert!(
        diff <= budget,
        "diff {diff:.3e} exceeds budget {budget:.3e} (scale {scale:.3e})"
    );
    // the probe must not be vacuous
    assert!(inner.tail_bound < 2e-2 * scale, "tail {} too large", inner.tail_bound);
    assert!(outer.tail_bound < 2e-2 * scale);
}
