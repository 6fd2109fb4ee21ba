//! Parameter sets for the p-uple integral and Condition C validation.

use crate::util::{dist_to_integer, near_integer};
use crate::{Error, Result, NEAR_DEGENERATE_WARN, NEAR_INTEGER_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The 2p+2 complex exponents of the p-uple integral: a0, a[1..p], b[1..p]
/// and their tilded (antiholomorphic) partners.
///
/// Index conventions follow the integral: `a(i)` is defined for i = 0..=p
/// with `a(0) = a0`, `b(j)` for j = 1..=p, and the bases additionally use
/// the convention b(0) = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterSet {
    pub p: usize,
    pub a0: Complex64,
    pub a0_t: Complex64,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub a_t: Vec<Complex64>,
    pub b_t: Vec<Complex64>,
}

impl ParameterSet {
    pub fn new(
        a0: (f64, f64),
        a0_t: (f64, f64),
        a: &[(f64, f64)],
        b: &[(f64, f64)],
        a_t: &[(f64, f64)],
        b_t: &[(f64, f64)],
    ) -> Result<Self> {
        let p = a.len();
        if b.len() != p || a_t.len() != p || b_t.len() != p {
            return Err(Error::BadInput(format!(
                "parameter vectors must share length p: a={}, b={}, a_t={}, b_t={}",
                a.len(),
                b.len(),
                a_t.len(),
                b_t.len()
            )));
        }
        if p == 0 {
            return Err(Error::BadInput("p must be >= 1".into()));
        }
        let cx = |v: &[(f64, f64)]| v.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        Ok(ParameterSet {
            p,
            a0: Complex64::new(a0.0, a0.1),
            a0_t: Complex64::new(a0_t.0, a0_t.1),
            a: cx(a),
            b: cx(b),
            a_t: cx(a_t),
            b_t: cx(b_t),
        })
    }

    /// a(i), i = 0..=p.
    pub fn av(&self, i: usize) -> Complex64 {
        if i == 0 {
            self.a0
        } else {
            self.a[i - 1]
        }
    }

    /// tilded a(i), i = 0..=p.
    pub fn at(&self, i: usize) -> Complex64 {
        if i == 0 {
            self.a0_t
        } else {
            self.a_t[i - 1]
        }
    }

    /// b(j), j = 0..=p, with the convention b(0) = 1.
    pub fn bv(&self, j: usize) -> Complex64 {
        if j == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            self.b[j - 1]
        }
    }

    /// tilded b(j), j = 0..=p, with b~(0) = 1.
    pub fn bt(&self, j: usize) -> Complex64 {
        if j == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            self.b_t[j - 1]
        }
    }

    /// psi_p = sum b_i - sum a_i (a-sum includes a0).
    pub fn psi(&self) -> Complex64 {
        self.b.iter().sum::<Complex64>() - self.a.iter().sum::<Complex64>() - self.a0
    }

    /// Tilded psi_p.
    pub fn psi_t(&self) -> Complex64 {
        self.b_t.iter().sum::<Complex64>() - self.a_t.iter().sum::<Complex64>() - self.a0_t
    }

    /// The parameter set with every pair (a_i, b_i) and (a0) shifted to the
    /// system with the top pair removed (used by the boundary-value
    /// machinery, which integrates the p-1 pair system against the top
    /// exponents).
    pub fn drop_top_pair(&self) -> Result<ParameterSet> {
        if self.p < 2 {
            return Err(Error::BadInput(
                "drop_top_pair requires p >= 2; at p = 1 the inner system is the bare a0 factor"
                    .into(),
            ));
        }
        Ok(ParameterSet {
            p: self.p - 1,
            a0: self.a0,
            a0_t: self.a0_t,
            a: self.a[..self.p - 1].to_vec(),
            b: self.b[..self.p - 1].to_vec(),
            a_t: self.a_t[..self.p - 1].to_vec(),
            b_t: self.b_t[..self.p - 1].to_vec(),
        })
    }

    pub fn validate(&self) -> ConditionReport {
        validate(self)
    }

    /// Errors unless every Condition C clause passes.
    pub fn require_condition_c(&self) -> Result<()> {
        let report = self.validate();
        if report.passes() {
            Ok(())
        } else {
            Err(Error::ConditionC(report.summary()))
        }
    }

    /// Exact integer difference a_i - a~_i (i = 0..=p); errors when
    /// Condition C(d) does not hold for that index.
    pub fn a_shift(&self, i: usize) -> Result<i64> {
        near_integer(self.av(i) - self.at(i), NEAR_INTEGER_TOL)
            .ok_or_else(|| Error::ConditionC(format!("a[{i}] - a~[{i}] is not an integer")))
    }

    /// Exact integer difference b_j - b~_j (j = 0..=p).
    pub fn b_shift(&self, j: usize) -> Result<i64> {
        near_integer(self.bv(j) - self.bt(j), NEAR_INTEGER_TOL)
            .ok_or_else(|| Error::ConditionC(format!("b[{j}] - b~[{j}] is not an integer")))
    }
}

/// Which Condition C clause a finding refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    A,
    B,
    C,
    D,
}

/// A single violated (or nearly violated) sub-condition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Finding {
    pub clause: Clause,
    /// Human-readable quantity, e.g. "b[1]" or "a[0]-b[2]".
    pub quantity: String,
    /// Distance to the nearest integer.
    pub distance: f64,
}

/// Theorem-level convergence-window booleans. These gate oracle
/// comparisons only; closed forms are evaluated whenever Condition C holds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceWindows {
    /// Re(a_i + a~_i) > 0 for every i = 1..=p (integrability at z_i = 0).
    pub origin_ok: bool,
    /// Re(b_i + b~_i - a_i - a~_i) > 0 for every i (integrability at z_i = 1).
    pub one_ok: bool,
    /// Re(a0 + a~0) < 2 (integrability at the moving point).
    pub moving_ok: bool,
    /// Re(b_i + b~_i - a0 - a~0) < 2 for every i (integrability at infinity).
    pub infinity_ok: bool,
    /// Re(psi_{p-1} + psi~_{p-1}) > -2 and psi_{p-1} not an integer.
    pub psi_ok: bool,
}

impl ConvergenceWindows {
    pub fn all(&self) -> bool {
        self.origin_ok && self.one_ok && self.moving_ok && self.infinity_ok
    }
}

/// Result of Condition C validation: every violated sub-condition with the
/// offending quantity and its distance to the nearest integer, plus
/// near-degeneracy warnings and the convergence-window booleans.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub violations: Vec<Finding>,
    /// Distances within [`NEAR_DEGENERATE_WARN`] of an integer on clauses
    /// (a)-(c): warn and widen error bars, do not refuse.
    pub warnings: Vec<Finding>,
    pub windows: ConvergenceWindows,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.violations.is_empty() {
            return "all clauses pass".into();
        }
        self.violations
            .iter()
            .map(|f| format!("({:?}) {} at distance {:.3e}", f.clause, f.quantity, f.distance))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Check every Condition C clause.
///
/// (a) no b_j, b~_j, a_i, a~_i integer; (b) no same-family difference
/// integer; (c) no a_i - b_j or a~_i - b~_j integer; (d) every a_i - a~_i
/// and b_j - b~_j integer.
pub fn validate(ps: &ParameterSet) -> ConditionReport {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let p = ps.p;

    let mut check_not_integer = |clause: Clause, quantity: String, v: Complex64| {
        let d = dist_to_integer(v);
        if d <= NEAR_INTEGER_TOL {
            violations.push(Finding {
                clause,
                quantity,
                distance: d,
            });
        } else if d < NEAR_DEGENERATE_WARN {
            warnings.push(Finding {
                clause,
                quantity,
                distance: d,
            });
        }
    };

    // (a)
    for i in 0..=p {
        check_not_integer(Clause::A, format!("a[{i}]"), ps.av(i));
        check_not_integer(Clause::A, format!("a~[{i}]"), ps.at(i));
    }
    for j in 1..=p {
        check_not_integer(Clause::A, format!("b[{j}]"), ps.bv(j));
        check_not_integer(Clause::A, format!("b~[{j}]"), ps.bt(j));
    }
    // (b)
    for i in 0..=p {
        for j in (i + 1)..=p {
            check_not_integer(Clause::B, format!("a[{i}]-a[{j}]"), ps.av(i) - ps.av(j));
            check_not_integer(Clause::B, format!("a~[{i}]-a~[{j}]"), ps.at(i) - ps.at(j));
        }
    }
    for i in 1..=p {
        for j in (i + 1)..=p {
            check_not_integer(Clause::B, format!("b[{i}]-b[{j}]"), ps.bv(i) - ps.bv(j));
            check_not_integer(Clause::B, format!("b~[{i}]-b~[{j}]"), ps.bt(i) - ps.bt(j));
        }
    }
    // (c)
    for i in 0..=p {
        for j in 1..=p {
            check_not_integer(Clause::C, format!("a[{i}]-b[{j}]"), ps.av(i) - ps.bv(j));
            check_not_integer(Clause::C, format!("a~[{i}]-b~[{j}]"), ps.at(i) - ps.bt(j));
        }
    }
    // (d): these must BE integers.
    for i in 0..=p {
        let d = dist_to_integer(ps.av(i) - ps.at(i));
        if d > NEAR_INTEGER_TOL {
            violations.push(Finding {
                clause: Clause::D,
                quantity: format!("a[{i}]-a~[{i}]"),
                distance: d,
            });
        }
    }
    for j in 1..=p {
        let d = dist_to_integer(ps.bv(j) - ps.bt(j));
        if d > NEAR_INTEGER_TOL {
            violations.push(Finding {
                clause: Clause::D,
                quantity: format!("b[{j}]-b~[{j}]"),
                distance: d,
            });
        }
    }

    let origin_ok = (1..=p).all(|i| (ps.av(i) + ps.at(i)).re > 0.0);
    let one_ok = (1..=p).all(|i| (ps.bv(i) + ps.bt(i) - ps.av(i) - ps.at(i)).re > 0.0);
    let moving_ok = (ps.a0 + ps.a0_t).re < 2.0;
    let infinity_ok = (1..=p).all(|i| (ps.bv(i) + ps.bt(i) - ps.a0 - ps.a0_t).re < 2.0);
    let psi_ok = if p >= 1 {
        let psi_lower: Complex64 = (1..p).map(|i| ps.bv(i)).sum::<Complex64>()
            - (0..p).map(|i| ps.av(i)).sum::<Complex64>();
        let psi_lower_t: Complex64 = (1..p).map(|i| ps.bt(i)).sum::<Complex64>()
            - (0..p).map(|i| ps.at(i)).sum::<Complex64>();
        (psi_lower + psi_lower_t).re > -2.0 && near_integer(psi_lower, NEAR_INTEGER_TOL).is_none()
    } else {
        true
    };

    ConditionReport {
        violations,
        warnings,
        windows: ConvergenceWindows {
            origin_ok,
            one_ok,
            moving_ok,
            infinity_ok,
            psi_ok,
        },
    }
}
