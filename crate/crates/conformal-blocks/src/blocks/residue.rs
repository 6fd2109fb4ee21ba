//! The rational residue identity behind off-diagonal cancellation
//! (the "sum of the residues is zero" lemma).

use crate::{Error, Result};
use num_complex::Complex64;

/// Both sides of the residue identity for every index pair (n, k):
/// `lhs[n][k]` is the explicit double-product-plus-sum expression,
/// `rhs[n][k]` the delta-structured closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueMatrices {
    pub lhs: Vec<Vec<Complex64>>,
    pub rhs: Vec<Vec<Complex64>>,
}

/// Evaluate the identity at points x_0..x_p (length p+1) and y_1..y_p
/// (length p). Points must be pairwise distinct and none equal to 1
/// (tolerance 1e-9).
///
/// lhs_{n,k} = prod_i (1-x_i)/(1-y_i)
///   + sum_j (1-x_n)(1-x_k)(x_0-y_j)(y_j-x_j) / [(1-y_j)(1-x_0)(y_j-x_n)(y_j-x_k)]
///     * prod_{i != j} (x_i-y_j)/(y_i-y_j)
///
/// rhs_{n,k} = delta_{n,k} u_n prod_{i != n}(u_n-u_i) / (u_0 prod_i (u_n-z_i)),
/// with u_i = x_i - 1 and z_k = y_k - 1.
pub fn residue_identity(x: &[Complex64], y: &[Complex64]) -> Result<ResidueMatrices> {
    let p = y.len();
    if x.len() != p + 1 {
        return Err(Error::BadInput(format!(
            "expected p+1 x-points and p y-points, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let tol = 1e-9;
    let mut all: Vec<Complex64> = x.to_vec();
    all.extend_from_slice(y);
    for (i, &pi) in all.iter().enumerate() {
        if (pi - one).norm() < tol {
            return Err(Error::DegeneratePoints(format!("point {pi} equals 1")));
        }
        for &pj in all.iter().skip(i + 1) {
            if (pi - pj).norm() < tol {
                return Err(Error::DegeneratePoints(format!(
                    "points {pi} and {pj} coincide"
                )));
            }
        }
    }

    let base: Complex64 = (0..p).map(|i| (one - x[i + 1]) / (one - y[i])).product();

    let mut lhs = vec![vec![Complex64::new(0.0, 0.0); p + 1]; p + 1];
    let mut rhs = vec![vec![Complex64::new(0.0, 0.0); p + 1]; p + 1];

    for n in 0..=p {
        for k in 0..=p {
            let mut acc = base;
            for j in 1..=p {
                let yj = y[j - 1];
                let mut term = (one - x[n]) * (one - x[k]) * (x[0] - yj) * (yj - x[j])
                    / ((one - yj) * (one - x[0]) * (yj - x[n]) * (yj - x[k]));
                for i in 1..=p {
                    if i != j {
                        term *= (x[i] - yj) / (y[i - 1] - yj);
                    }
                }
                acc += term;
            }
            lhs[n][k] = acc;
        }
        // diagonal closed form
        let un = x[n] - one;
        let u0 = x[0] - one;
        let mut num = un;
        for i in 0..=p {
            if i != n {
                num *= un - (x[i] - one);
            }
        }
        let mut den = u0;
        for j in 0..p {
            den *= un - (y[j] - one);
        }
        rhs[n][n] = num / den;
    }

    Ok(ResidueMatrices { lhs, rhs })
}
