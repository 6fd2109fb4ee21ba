//! Error conditions shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong while evaluating closed forms or oracles.
///
/// NaN is never returned silently: operations that would produce one report
/// an error instead.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("gamma pole: argument within tolerance of non-positive integer {0}")]
    PoleAt(i64),

    #[error("sin(pi z) overflow: |Im z| = {0} exceeds the representable range")]
    Overflow(f64),

    #[error("hypergeometric series divergent at |z| = {0}")]
    Divergent(f64),

    #[error("lower hypergeometric parameter {0} is a non-positive integer")]
    LowerParamPole(Complex64),

    #[error("series truncation cap hit after {terms} terms (tail ~ {tail:.3e})")]
    TruncationCapHit { terms: usize, tail: f64 },

    #[error("upper parameters congruent mod 1: a[{0}] - a[{1}] is an integer")]
    DegenerateParameters(usize, usize),

    #[error("argument of z = {0} outside (0, 2pi) continuation range")]
    ArgOutOfRange(Complex64),

    #[error("generalized Euler function: {0} - {1} is not an integer")]
    NonIntegerDifference(Complex64, Complex64),

    #[error("generalized Euler function: gamma pole at argument {0}")]
    GammaPole(Complex64),

    #[error("generalized Euler function: sin pi({0}) = 0")]
    SineZero(Complex64),

    #[error("Condition C violated: {0}")]
    ConditionC(String),

    #[error("block evaluation refused on the cut z in [0,1): z = {0}")]
    OnCut(Complex64),

    #[error("degenerate points: {0}")]
    DegeneratePoints(String),

    #[error("finite-difference step too large: fd error {fd:.3e} exceeds residual {residual:.3e}")]
    StepTooLarge { fd: f64, residual: f64 },

    #[error("quadrature budget exhausted: needed ~{needed} evaluations, allowed {allowed}")]
    BudgetExhausted { needed: u64, allowed: u64 },

    #[error("convergence window violated: {0}")]
    NonConvergentWindow(String),

    #[error("residue series non-convergent at w = {0}")]
    NonConvergent(f64),

    #[error("pole families collide: {0}")]
    PoleCollision(String),

    #[error("extrapolation unstable: successive estimates diverge ({0})")]
    ExtrapolationUnstable(String),

    #[error("oracle sub-integration did not converge: {0}")]
    OracleNotConverged(String),

    #[error("Hankel order {0} is within tolerance of the excluded half-integer family")]
    HalfIntegerPole(Complex64),

    #[error("invalid input: {0}")]
    BadInput(String),
}
