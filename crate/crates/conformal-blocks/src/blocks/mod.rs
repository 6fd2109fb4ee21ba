//! The p-uple conformal integral: Condition C validation, block
//! coefficients in the lambda / mu / nu bases, block-basis solutions, and
//! evaluation of I_{p+1} on both sides of |z| = 1.

mod coeffs;
mod eval;
mod lemma4;
mod params;
mod residue;
pub mod sampling;

pub use coeffs::{
    connection_matrix, g_basis_coeffs, generalized_beta, lambda_coeffs, large_z_coeffs,
    log_generalized_beta, mu_top, nu_coeffs, v_norm, w_norm, Basis, BlockDecomposition,
};
pub use eval::{
    block_solution, evaluate_large_z, evaluate_large_z_with_phase, evaluate_small_z,
    evaluate_small_z_split, evaluate_small_z_with_phase, large_solution, BlockValue,
};
pub use lemma4::{apply_operator, lemma4_residual};
pub use params::{validate, Clause, ConditionReport, ConvergenceWindows, Finding, ParameterSet};
pub use residue::{residue_identity, ResidueMatrices};
