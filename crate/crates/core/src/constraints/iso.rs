//! Best-effort isomorphism test for LR-algebras of equal dimension.

use std::time::Duration;

use num_traits::{One, Zero};
use thiserror::Error;

use super::groebner::{certify_polynomials, groebner_basis, CertifyOutcome, Limits};
use super::{Monomial, Polynomial, Var};
use crate::exactlin::{int, rat, Matrix, Rational, Subspace};
use crate::lr::LrAlgebra;

/// The Groebner stage is skipped above this dimension (the determinant
/// side condition alone has `n!` terms).
const MAX_GROEBNER_DIM: usize = 5;

pub const INVARIANT_EQUATIONS: &str = "isomorphism equations are inconsistent";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoBudget {
    pub groebner: Limits,
    /// Node cap of the backtracking search over small rational entries.
    pub search_nodes: usize,
}

impl Default for IsoBudget {
    fn default() -> Self {
        IsoBudget {
            groebner: Limits {
                max_basis_size: 3000,
                max_degree: 10,
                time_budget: Duration::from_secs(20),
            },
            search_nodes: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `T` with `T(x.y) = T(x).T(y)`, mapping the first algebra onto the second.
    Found(Matrix),
    DistinguishedBy(String),
    Undecided,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

fn trace(m: &Matrix) -> Rational {
    (0..m.rows()).map(|i| m.get(i, i).clone()).sum()
}

/// Dimension of `{x : sum x_i M_i = 0}`.
fn kernel_dim(ms: &[Matrix]) -> usize {
    let n = ms.len();
    let rows = ms.first().map_or(0, |m| m.rows() * m.cols());
    let stacked = Matrix::from_fn(rows, n, |r, c| ms[c].entries()[r].clone());
    n - stacked.rank()
}

/// Basis-independent numbers attached to an LR-algebra, with names.
pub fn invariants(a: &LrAlgebra) -> Vec<(&'static str, String)> {
    let n = a.dim();
    let full = Subspace::full(n);
    let prod = |x: &Subspace, y: &Subspace| a.ideal_product(x, y).expect("same ambient");
    let dims = |v: Vec<usize>| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let ls: Vec<Matrix> = (0..n).map(|i| a.left_mult_basis(i)).collect();
    let rs: Vec<Matrix> = (0..n).map(|i| a.right_mult_basis(i)).collect();
    let gram =
        |x: &[Matrix], y: &[Matrix]| Matrix::from_fn(n, n, |i, j| trace(&(&x[i] * &y[j]))).rank();
    let trace_rank = |x: &[Matrix]| usize::from(x.iter().any(|m| !trace(m).is_zero()));
    let aa = prod(&full, &full);
    let all_nilpotent = |x: &[Matrix]| x.iter().all(|m| m.is_nilpotent().expect("square"));
    vec![
        ("completeness", a.is_complete().to_string()),
        ("nilpotency of all R(x)", all_nilpotent(&rs).to_string()),
        ("dim A.A", aa.dim().to_string()),
        ("dim Z(A)", a.lie().center().dim().to_string()),
        (
            "lower central series dims",
            dims(a.lie().lower_central_series().dims()),
        ),
        ("derived series dims", dims(a.lie().derived_series().dims())),
        (
            "upper central series dims",
            dims(a.lie().upper_central_series().dims()),
        ),
        ("dim {x : x.A = 0}", kernel_dim(&ls).to_string()),
        ("dim {x : A.x = 0}", kernel_dim(&rs).to_string()),
        ("dim A.(A.A)", prod(&full, &aa).dim().to_string()),
        ("dim (A.A).A", prod(&aa, &full).dim().to_string()),
        ("dim (A.A).(A.A)", prod(&aa, &aa).dim().to_string()),
        ("rank of tr L(x)L(y)", gram(&ls, &ls).to_string()),
        ("rank of tr R(x)R(y)", gram(&rs, &rs).to_string()),
        ("rank of tr L(x)R(y)", gram(&ls, &rs).to_string()),
        ("rank of x -> tr L(x)", trace_rank(&ls).to_string()),
        ("rank of x -> tr R(x)", trace_rank(&rs).to_string()),
    ]
}

/// `T(e_i . e_j) = T(e_i) . T(e_j)` for all `i, j` and `det T != 0`.
pub fn is_isomorphism(a: &LrAlgebra, b: &LrAlgebra, t: &Matrix) -> bool {
    let n = a.dim();
    if b.dim() != n || t.rows() != n || t.cols() != n || t.determinant().is_zero() {
        return false;
    }
    let cols: Vec<_> = (0..n).map(|c| t.column(c)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = t.mul_vec(a.product_tensor().entry(i, j));
            let rhs = b.product(&cols[i], &cols[j]).expect("dimension checked");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn t_var(n: usize, r: usize, c: usize) -> Var {
    (r * n + c) as Var
}

/// Coordinates of `T(e_i . e_j) - T(e_i) . T(e_j)` as polynomials in the
/// entries of `T`.
fn iso_equations(a: &LrAlgebra, b: &LrAlgebra) -> Vec<Polynomial> {
    let n = a.dim();
    let tm = |r: usize, c: usize| Monomial::var(t_var(n, r, c));
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = a.product_tensor().entry(i, j);
            for q in 0..n {
                let mut terms: Vec<(Monomial, Rational)> = Vec::new();
                for (k, c) in ij.iter().enumerate() {
                    terms.push((tm(q, k), c.clone()));
                }
                for x in 0..n {
                    for y in 0..n {
                        let c = &b.product_tensor().entry(x, y)[q];
                        if !c.is_zero() {
                            terms.push((tm(x, i).mul(&tm(y, j)), -c.clone()));
                        }
                    }
                }
                let p = Polynomial::from_terms(terms);
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// `det T` by cofactor expansion along the first row.
fn det_poly(n: usize, rows: &[usize], cols: &[usize]) -> Polynomial {
    if rows.is_empty() {
        return Polynomial::constant(Rational::one());
    }
    let r = rows[0];
    let mut acc = Polynomial::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_poly(n, &rows[1..], &rest);
        let sign = if idx % 2 == 0 { int(1) } else { int(-1) };
        acc = acc.add(&minor.mul(&Polynomial::var(t_var(n, r, c))).scale(&sign));
    }
    acc
}

/// Decides, within `budget`, whether `a` and `b` are isomorphic.
///
/// Cheap invariants are compared first; then the isomorphism equations with
/// `det(T) * s = 1` are run through Buchberger; finally a bounded
/// backtracking search over entries in `{0, +-1, +-2, +-1/2}` looks for an
/// explicit `T`, which is verified before being returned.
pub fn iso_search(
    a: &LrAlgebra,
    b: &LrAlgebra,
    budget: &IsoBudget,
) -> Result<IsoOutcome, IsoError> {
    let n = a.dim();
    if b.dim() != n {
        return Err(IsoError::DimensionMismatch {
            left: n,
            right: b.dim(),
        });
    }
    if a.product_tensor() == b.product_tensor() {
        return Ok(IsoOutcome::Found(Matrix::identity(n)));
    }
    for ((name, va), (_, vb)) in invariants(a).into_iter().zip(invariants(b)) {
        if va != vb {
            return Ok(IsoOutcome::DistinguishedBy(name.to_string()));
        }
    }

    let eqs = iso_equations(a, b);
    let mut pruning = eqs.clone();
    if n <= MAX_GROEBNER_DIM {
        let all: Vec<usize> = (0..n).collect();
        let s = Polynomial::var((n * n) as Var);
        let det_side = det_poly(n, &all, &all)
            .mul(&s)
            .sub(&Polynomial::constant(Rational::one()));
        let mut system = eqs.clone();
        system.push(det_side);
        match certify_polynomials(&system, &budget.groebner) {
            CertifyOutcome::Inconsistent(_) => {
                return Ok(IsoOutcome::DistinguishedBy(INVARIANT_EQUATIONS.to_string()))
            }
            CertifyOutcome::SolutionsMayExist { .. } => {
                if let Some(gb) = groebner_basis(&system, &budget.groebner) {
                    let s_var = (n * n) as Var;
                    pruning.extend(gb.into_iter().filter(|p| !p.variables().contains(&s_var)));
                }
            }
            CertifyOutcome::BudgetExhausted { .. } => {}
        }
    }

    match search(n, &pruning, budget.search_nodes) {
        Some(t) if is_isomorphism(a, b, &t) => Ok(IsoOutcome::Found(t)),
        _ => Ok(IsoOutcome::Undecided),
    }
}

/// Backtracking over `T` column by column; an equation is checked once all
/// of its unknowns are assigned, and each finished column must be
/// independent of the earlier ones.
fn search(n: usize, eqs: &[Polynomial], max_nodes: usize) -> Option<Matrix> {
    let order: Vec<(usize, usize)> = (0..n).flat_map(|c| (0..n).map(move |r| (r, c))).collect();
    let pos_of = |v: Var| {
        let (r, c) = (v as usize / n, v as usize % n);
        c * n + r
    };
    let mut ready: Vec<Vec<&Polynomial>> = vec![Vec::new(); n * n];
    for p in eqs {
        if let Some(last) = p.variables().into_iter().map(pos_of).max() {
            ready[last].push(p);
        }
    }
    let off_diag = [
        int(0),
        int(1),
        int(-1),
        int(2),
        int(-2),
        rat(1, 2),
        rat(-1, 2),
    ];
    let diag = [
        int(1),
        int(0),
        int(-1),
        int(2),
        int(-2),
        rat(1, 2),
        rat(-1, 2),
    ];

    struct State<'a> {
        n: usize,
        order: Vec<(usize, usize)>,
        ready: Vec<Vec<&'a Polynomial>>,
        values: Vec<Rational>,
        nodes: usize,
        max_nodes: usize,
    }

    fn rec(st: &mut State<'_>, pos: usize, off: &[Rational], diag: &[Rational]) -> Option<bool> {
        let n = st.n;
        if pos == n * n {
            return Some(true);
        }
        let (r, c) = st.order[pos];
        let choices = if r == c { diag } else { off };
        for v in choices {
            st.nodes += 1;
            if st.nodes > st.max_nodes {
                return None;
            }
            st.values[r * n + c] = v.clone();
            let vals = &st.values;
            let ok = st.ready[pos]
                .iter()
                .all(|p| p.eval(|x| vals[x as usize].clone()).is_zero());
            if !ok {
                continue;
            }
            if r == n - 1 {
                let cols = Matrix::from_fn(n, c + 1, |i, j| st.values[i * n + j].clone());
                if cols.rank() < c + 1 {
                    continue;
                }
            }
            match rec(st, pos + 1, off, diag) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
        }
        st.values[r * n + c] = Rational::zero();
        Some(false)
    }

    let mut st = State {
        n,
        order,
        ready,
        values: vec![Rational::zero(); n * n],
        nodes: 0,
        max_nodes,
    };
    match rec(&mut st, 0, &off_diag, &diag) {
        Some(true) => Some(Matrix::from_fn(n, n, |r, c| st.values[r * n + c].clone())),
        _ => None,
    }
}
