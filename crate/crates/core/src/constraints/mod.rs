//! Polynomial constraint systems whose common zeros are the LR-structures on
//! a fixed Lie algebra.
//!
//! The unknowns are the entries of the left multiplications:
//! `x[i][j][k]` is the `(j,k)` entry of `L(e_i)`, i.e. the `e_j` coefficient
//! of `e_i . e_k`. Right multiplications are never separate unknowns, since
//! `R(e_k)_{j,m} = x[m][j][k]`.

pub mod groebner;
pub mod iso;
mod poly;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::Rational;
use crate::lie::LieAlgebra;
use crate::lr::{CHECK_COMPAT, CHECK_LR1, CHECK_LR2};
use crate::report::VerificationReport;
use crate::tensor::Tensor3;

pub use groebner::{buchberger_certify, Certificate, CertifyOutcome, Limits};
pub use iso::{iso_search, IsoBudget, IsoError, IsoOutcome};
pub use poly::{Monomial, PolyDisplay, Polynomial, Var};
pub use reduce::structural_reduce;

pub const CHECK_FORCED_ZERO: &str = "forced zero";
pub const CHECK_SUBSTITUTION: &str = "linear substitution";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("assignment has {found} values, the system has {expected} variables")]
    IncompleteAssignment { expected: usize, found: usize },
}

/// One polynomial equation `poly = 0` with the identity it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub poly: Polynomial,
    pub origin: String,
    /// 1-based basis indices of the identity instance.
    pub indices: Vec<usize>,
}

impl Equation {
    pub fn new(poly: Polynomial, origin: impl Into<String>, indices: Vec<usize>) -> Self {
        Equation {
            poly,
            origin: origin.into(),
            indices,
        }
    }
}

/// A system of polynomial equations in the `n^3` unknowns `x[i][j][k]`.
///
/// After reduction, some unknowns are removed from the equations: the
/// `forced_zero` ones vanish on every solution, the `substitutions` ones are
/// affine in the remaining unknowns. Each carries the identity that forced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    n: usize,
    equations: Vec<Equation>,
    forced_zero: BTreeMap<Var, String>,
    substitutions: BTreeMap<Var, (Polynomial, String)>,
    added: Vec<Equation>,
}

/// Index of `x[i][j][k]` (0-based arguments).
pub fn variable(n: usize, i: usize, j: usize, k: usize) -> Var {
    ((i * n + j) * n + k) as Var
}

/// Inverse of [`variable`].
pub fn variable_indices(n: usize, v: Var) -> (usize, usize, usize) {
    let v = v as usize;
    (v / (n * n), v / n % n, v % n)
}

/// 1-based textual name, `x[i][j][k]`.
pub fn variable_name(n: usize, v: Var) -> String {
    let (i, j, k) = variable_indices(n, v);
    format!("x[{}][{}][{}]", i + 1, j + 1, k + 1)
}

/// The assignment `x[i][j][k] = (e_i . e_k)_j` read off a product tensor.
pub fn assignment_from_tensor(t: &Tensor3) -> Vec<Rational> {
    let n = t.dim();
    let mut out = vec![Rational::zero(); n * n * n];
    for i in 0..n {
        for k in 0..n {
            for (j, c) in t.entry(i, k).iter().enumerate() {
                out[variable(n, i, j, k) as usize] = c.clone();
            }
        }
    }
    out
}

/// Inverse of [`assignment_from_tensor`]; `values.len()` must be a cube.
pub fn tensor_from_assignment(n: usize, values: &[Rational]) -> Tensor3 {
    assert_eq!(values.len(), n * n * n);
    let mut t = Tensor3::zeros(n);
    for (v, c) in values.iter().enumerate() {
        let (i, j, k) = variable_indices(n, v as Var);
        t.set(i, k, j, c.clone());
    }
    t
}

impl ConstraintSystem {
    pub(crate) fn from_parts(
        n: usize,
        equations: Vec<Equation>,
        forced_zero: BTreeMap<Var, String>,
        substitutions: BTreeMap<Var, (Polynomial, String)>,
        added: Vec<Equation>,
    ) -> Self {
        ConstraintSystem {
            n,
            equations,
            forced_zero,
            substitutions,
            added,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Always `n^3`, including eliminated unknowns.
    pub fn num_variables(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.equations.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn forced_zero(&self) -> &BTreeMap<Var, String> {
        &self.forced_zero
    }

    pub fn substitutions(&self) -> &BTreeMap<Var, (Polynomial, String)> {
        &self.substitutions
    }

    /// Linear constraints added by structural reduction, in the original
    /// unknowns.
    pub fn added_constraints(&self) -> &[Equation] {
        &self.added
    }

    pub fn eliminated_count(&self) -> usize {
        self.forced_zero.len() + self.substitutions.len()
    }

    /// Unknowns still occurring in some equation.
    pub fn remaining_variables(&self) -> BTreeSet<Var> {
        self.equations
            .iter()
            .flat_map(|e| e.poly.variables())
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.equations
            .iter()
            .map(|e| e.poly.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn variable_name(&self, v: Var) -> String {
        variable_name(self.n, v)
    }

    pub fn display<'a>(
        &'a self,
        p: &'a Polynomial,
    ) -> PolyDisplay<'a, impl Fn(Var) -> String + 'a> {
        PolyDisplay {
            poly: p,
            name: move |v| variable_name(self.n, v),
        }
    }

    /// Text form: one equation per line, eliminated unknowns listed first as
    /// `#` comments.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# variables: {}", self.num_variables());
        let _ = writeln!(out, "# equations: {}", self.equations.len());
        for (v, tag) in &self.forced_zero {
            let _ = writeln!(out, "# {} = 0  [{}]", self.variable_name(*v), tag);
        }
        for (v, (p, tag)) in &self.substitutions {
            let _ = writeln!(
                out,
                "# {} = {}  [{}]",
                self.variable_name(*v),
                self.display(p),
                tag
            );
        }
        for e in &self.equations {
            let _ = writeln!(out, "{}", self.display(&e.poly));
        }
        out
    }
}

/// LR1 and LR2 on all basis triples plus the (linear) compatibility with the
/// bracket. A product tensor is an LR-structure on `g` iff its assignment is
/// a common zero.
pub fn generate_lr_system(g: &LieAlgebra) -> ConstraintSystem {
    let n = g.dim();
    let x = |i: usize, j: usize, k: usize| Monomial::var(variable(n, i, j, k));
    let one = Rational::one();
    let mut equations = Vec::new();

    // [L(e_a), L(e_b)]_{t,c} = 0
    for a in 0..n {
        for b in (a + 1)..n {
            for t in 0..n {
                for c in 0..n {
                    let terms = (0..n).flat_map(|m| {
                        [
                            (x(a, t, m).mul(&x(b, m, c)), one.clone()),
                            (x(b, t, m).mul(&x(a, m, c)), -one.clone()),
                        ]
                    });
                    let p = Polynomial::from_terms(terms);
                    if !p.is_zero() {
                        equations.push(Equation::new(
                            p,
                            CHECK_LR1,
                            vec![a + 1, b + 1, t + 1, c + 1],
                        ));
                    }
                }
            }
        }
    }

    // ((e_a . e_b) . e_c - (e_a . e_c) . e_b)_t = 0
    for a in 0..n {
        for b in 0..n {
            for c in (b + 1)..n {
                for t in 0..n {
                    let terms = (0..n).flat_map(|m| {
                        [
                            (x(a, m, b).mul(&x(m, t, c)), one.clone()),
                            (x(a, m, c).mul(&x(m, t, b)), -one.clone()),
                        ]
                    });
                    let p = Polynomial::from_terms(terms);
                    if !p.is_zero() {
                        equations.push(Equation::new(
                            p,
                            CHECK_LR2,
                            vec![a + 1, b + 1, c + 1, t + 1],
                        ));
                    }
                }
            }
        }
    }

    // (e_a . e_b - e_b . e_a - [e_a, e_b])_m = 0
    for a in 0..n {
        for b in (a + 1)..n {
            let br = g.bracket_basis(a, b);
            for m in 0..n {
                let p = Polynomial::from_terms([
                    (x(a, m, b), one.clone()),
                    (x(b, m, a), -one.clone()),
                    (Monomial::one(), -br[m].clone()),
                ]);
                equations.push(Equation::new(p, CHECK_COMPAT, vec![a + 1, b + 1, m + 1]));
            }
        }
    }

    ConstraintSystem::from_parts(n, equations, BTreeMap::new(), BTreeMap::new(), Vec::new())
}

/// Exact evaluation of every equation, eliminated unknown and added
/// constraint at a full assignment (indexed by [`variable`]).
pub fn evaluate_candidate(
    s: &ConstraintSystem,
    assignment: &[Rational],
) -> Result<VerificationReport, ConstraintError> {
    if assignment.len() != s.num_variables() {
        return Err(ConstraintError::IncompleteAssignment {
            expected: s.num_variables(),
            found: assignment.len(),
        });
    }
    let val = |v: Var| assignment[v as usize].clone();
    let mut report = VerificationReport::new();
    for e in s.equations.iter().chain(&s.added) {
        report.begin(&e.origin);
        report.expect_zero(&e.origin, &e.indices, &[e.poly.eval(val)]);
    }
    report.begin(CHECK_FORCED_ZERO);
    for v in s.forced_zero.keys() {
        let (i, j, k) = variable_indices(s.n, *v);
        report.expect_zero(CHECK_FORCED_ZERO, &[i + 1, j + 1, k + 1], &[val(*v)]);
    }
    report.begin(CHECK_SUBSTITUTION);
    for (v, (p, _)) in &s.substitutions {
        let (i, j, k) = variable_indices(s.n, *v);
        report.expect_zero(
            CHECK_SUBSTITUTION,
            &[i + 1, j + 1, k + 1],
            &[val(*v) - p.eval(val)],
        );
    }
    Ok(report)
}
