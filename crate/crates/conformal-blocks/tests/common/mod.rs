//! Shared fixtures and test oracles.

#![allow(dead_code)]

use conformal_blocks::blocks::ParameterSet;

/// Three admissible p = 1 parameter sets inside the integral's convergence
/// window (used for closed-form vs oracle comparisons). The second and
/// third exercise nonzero tilde shifts and imaginary parts.
pub fn p1_windowed_sets() -> Vec<ParameterSet> {
    vec![
        ParameterSet::new(
            (0.30, 0.0),
            (0.30, 0.0),
            &[(0.40, 0.0)],
            &[(1.20, 0.0)],
            &[(0.40, 0.0)],
            &[(1.20, 0.0)],
        )
        .unwrap(),
        ParameterSet::new(
            (0.45, 0.0),
            (0.45, 0.0),
            &[(0.35, 0.0)],
            &[(1.30, 0.0)],
            &[(0.35, 0.0)],
            &[(0.30, 0.0)],
        )
        .unwrap(),
        ParameterSet::new(
            (0.52, 0.1),
            (0.52, 0.1),
            &[(0.38, -0.08)],
            &[(1.42, 0.05)],
            &[(0.38, -0.08)],
            &[(1.42, 0.05)],
        )
        .unwrap(),
    ]
}

/// One admissible p = 2 set inside the window (4D Monte Carlo target).
/// Re(a0 + a~0) is kept small so the moving-surface singularity is square
/// integrable.
pub fn p2_windowed_set() -> ParameterSet {
    ParameterSet::new(
        (0.47, 0.0),
        (0.47, 0.0),
        &[(0.42, 0.0), (0.61, 0.0)],
        &[(1.23, 0.0), (1.44, 0.0)],
        &[(0.42, 0.0), (0.61, 0.0)],
        &[(1.23, 0.0), (1.44, 0.0)],
    )
    .unwrap()
}

/// Five admissible generalized-Euler quadruples inside the window
/// Re(alpha + alpha~) > 0, Re(beta + beta~) > 0, Re(sum) < 2.
pub fn gen_beta_quadruples() -> Vec<(f64, f64, f64, f64, f64, f64, f64, f64)> {
    // (al_re, al_im, be_re, be_im, alt_re, alt_im, bet_re, bet_im)
    vec![
        (0.40, 0.00, 0.45, 0.00, 0.40, 0.00, 0.45, 0.00),
        (0.70, 0.00, 0.40, 0.00, -0.30, 0.00, 0.40, 0.00),
        (0.55, 0.10, 0.35, -0.05, 0.55, 0.10, 0.35, -0.05),
        (0.62, 0.00, 0.81, 0.00, -0.38, 0.00, 0.81, 0.00),
        (0.33, -0.07, 0.72, 0.04, 0.33, -0.07, -0.28, 0.04),
    ]
}

pub mod dd;
