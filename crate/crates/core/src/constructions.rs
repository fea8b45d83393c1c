//! Explicit LR-structures: filiform algebras, 2-step nilpotent algebras,
//! free 3-step nilpotent algebras, and the free 4-step nilpotent algebra on
//! two generators.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactlin::{int, rat, vector, Matrix, Rational, Vector};
use crate::lie::{LieAlgebra, LieError};
use crate::lr::{LrAlgebra, LrError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("need at least {min} (got {found})")]
    TooSmall { min: usize, found: usize },
    #[error("expected {expected} free filiform coefficients, got {found}")]
    RowLength { expected: usize, found: usize },
    #[error("filiform coefficient c[{i}][{k}] is outside 3 <= i <= n-2, i+2 <= k <= n")]
    CoefficientOutOfRange { i: usize, k: usize },
    #[error("filiform coefficients violate c[{i}][{k}] = c[{}][{}]", i - 1, k - 1)]
    SpecViolation { i: usize, k: usize },
    #[error("not 2-step nilpotent: [e{i},[e{j},e{k}]] = {}", vector::format_combination(.value, "e"))]
    NotTwoStepNilpotent {
        i: usize,
        j: usize,
        k: usize,
        value: Vector,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Lr(#[from] LrError),
}

/// Structure constants `c[i][k]` of a filiform Lie algebra in an adapted
/// basis: `[e_2, e_i] = sum_k c[i][k] e_k` for `3 <= i <= n-2`, `k >= i+2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiliformSpec {
    n: usize,
    coeffs: BTreeMap<(usize, usize), Rational>,
}

impl FiliformSpec {
    /// Full coefficient table; missing entries are zero. Every entry must obey
    /// `c[i+1][k] = c[i][k-1]`.
    pub fn new(
        n: usize,
        coeffs: BTreeMap<(usize, usize), Rational>,
    ) -> Result<Self, ConstructionError> {
        if n < 3 {
            return Err(ConstructionError::TooSmall { min: 3, found: n });
        }
        for &(i, k) in coeffs.keys() {
            if i < 3 || i + 2 > n || k < i + 2 || k > n {
                return Err(ConstructionError::CoefficientOutOfRange { i, k });
            }
        }
        let spec = FiliformSpec { n, coeffs };
        for i in 4..=n.saturating_sub(2) {
            for k in (i + 2)..=n {
                if spec.c(i, k) != spec.c(i - 1, k - 1) {
                    return Err(ConstructionError::SpecViolation { i, k });
                }
            }
        }
        Ok(spec)
    }

    /// The free choices `c[3][5], ..., c[3][n]`; the remaining rows follow
    /// from `c[i][k] = c[3][k-i+3]`.
    pub fn from_top_row(n: usize, row: &[Rational]) -> Result<Self, ConstructionError> {
        if n < 3 {
            return Err(ConstructionError::TooSmall { min: 3, found: n });
        }
        let expected = n.saturating_sub(4);
        if row.len() != expected {
            return Err(ConstructionError::RowLength {
                expected,
                found: row.len(),
            });
        }
        let mut coeffs = BTreeMap::new();
        for i in 3..=n.saturating_sub(2) {
            for k in (i + 2)..=n {
                let c = &row[k - i - 2];
                if !num_traits::Zero::is_zero(c) {
                    coeffs.insert((i, k), c.clone());
                }
            }
        }
        Self::new(n, coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self, i: usize, k: usize) -> Rational {
        self.coeffs.get(&(i, k)).cloned().unwrap_or_default()
    }
}

pub fn filiform_lie(spec: &FiliformSpec) -> Result<LieAlgebra, ConstructionError> {
    let n = spec.n;
    let mut entries = Vec::new();
    for i in 2..n {
        entries.push((1, i, vector::unit(n, i)));
    }
    for i in 3..=n {
        let v: Vector = (1..=n).map(|k| spec.c(i, k)).collect();
        if !vector::is_zero(&v) {
            entries.push((2, i, v));
        }
    }
    Ok(LieAlgebra::from_table(n, &entries)?)
}

/// `L(e_1) = 0` and `L(e_i) = ad(e_1)^(i-2) ad(e_2)` for `i >= 2`.
pub fn filiform_lr(spec: &FiliformSpec) -> Result<LrAlgebra, ConstructionError> {
    let g = filiform_lie(spec)?;
    let n = g.dim();
    let ad1 = g.ad_basis(0);
    let ad2 = g.ad_basis(1);
    let mut left = vec![Matrix::zeros(n, n)];
    let mut cur = ad2;
    for _ in 2..=n {
        left.push(cur.clone());
        cur = &ad1 * &cur;
    }
    Ok(LrAlgebra::from_left_multiplications(g, &left)?)
}

/// `x.y = [x,y]/2`, valid exactly when `[g,[g,g]] = 0`.
pub fn halved_adjoint_lr(g: &LieAlgebra) -> Result<LrAlgebra, ConstructionError> {
    let n = g.dim();
    for j in 0..n {
        for k in (j + 1)..n {
            let inner = g.bracket_basis(j, k).to_vec();
            if vector::is_zero(&inner) {
                continue;
            }
            for i in 0..n {
                let value = g.bracket(&vector::unit(n, i), &inner)?;
                if !vector::is_zero(&value) {
                    return Err(ConstructionError::NotTwoStepNilpotent {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value,
                    });
                }
            }
        }
    }
    let half = rat(1, 2);
    let mut p = g.structure().clone();
    for c in p.raw_mut() {
        *c *= &half;
    }
    Ok(LrAlgebra::from_tensor(g.clone(), p)?)
}

/// Free 2-step nilpotent Lie algebra on `n` generators: `x_1..x_n`, then
/// `y_{j,k} = [x_j, x_k]` for `j < k` in lexicographic order.
pub fn free2_lie(n: usize) -> Result<LieAlgebra, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::TooSmall { min: 2, found: n });
    }
    let dim = n + n * (n - 1) / 2;
    let mut entries = Vec::new();
    let mut next = n;
    for j in 1..=n {
        for k in (j + 1)..=n {
            entries.push((j, k, vector::unit(dim, next)));
            next += 1;
        }
    }
    Ok(LieAlgebra::from_table(dim, &entries)?)
}

/// Basis bookkeeping for the free 3-step nilpotent Lie algebra on `n`
/// generators: `x_i`, then `y_{j,k} = [x_j,x_k]` for `j < k`, then the Hall
/// elements `z_{i,j,k} = [x_i, y_{j,k}]` with `j < k`, `i >= j`, ordered by
/// `(j, k)` and then `i`. Labels are 1-based.
#[derive(Clone, Debug)]
pub struct Free3Basis {
    n: usize,
    y_index: BTreeMap<(usize, usize), usize>,
    z_index: BTreeMap<(usize, usize, usize), usize>,
    dim: usize,
}

impl Free3Basis {
    pub fn new(n: usize) -> Result<Self, ConstructionError> {
        if n < 2 {
            return Err(ConstructionError::TooSmall { min: 2, found: n });
        }
        let mut next = n;
        let mut y_index = BTreeMap::new();
        for j in 1..=n {
            for k in (j + 1)..=n {
                y_index.insert((j, k), next);
                next += 1;
            }
        }
        let mut z_index = BTreeMap::new();
        for j in 1..=n {
            for k in (j + 1)..=n {
                for i in j..=n {
                    z_index.insert((i, j, k), next);
                    next += 1;
                }
            }
        }
        Ok(Free3Basis {
            n,
            y_index,
            z_index,
            dim: next,
        })
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n + n(n-1)/2 + (n^3 - n)/3`.
    pub fn formula_dim(n: usize) -> usize {
        n + n * (n - 1) / 2 + (n * n * n - n) / 3
    }

    pub fn x(&self, i: usize) -> Vector {
        vector::unit(self.dim, i - 1)
    }

    pub fn y(&self, j: usize, k: usize) -> Vector {
        vector::unit(self.dim, self.y_index[&(j, k)])
    }

    /// `[x_i, y_{j,k}]` in the Hall basis; for `i < j < k` this uses
    /// `z_{i,j,k} = z_{j,i,k} - z_{k,i,j}`.
    pub fn z(&self, i: usize, j: usize, k: usize) -> Vector {
        assert!(j < k);
        if i >= j {
            vector::unit(self.dim, self.z_index[&(i, j, k)])
        } else {
            vector::sub(&self.z(j, i, k), &self.z(k, i, j))
        }
    }
}

pub fn free3_lie(n: usize) -> Result<LieAlgebra, ConstructionError> {
    let b = Free3Basis::new(n)?;
    Ok(free3_lie_on(&b)?)
}

fn free3_lie_on(b: &Free3Basis) -> Result<LieAlgebra, LieError> {
    let n = b.n;
    let mut entries = Vec::new();
    for (&(j, k), &idx) in &b.y_index {
        entries.push((j, k, b.y(j, k)));
        for i in 1..=n {
            entries.push((i, idx + 1, b.z(i, j, k)));
        }
    }
    LieAlgebra::from_table(b.dim, &entries)
}

pub fn free3_lr(n: usize) -> Result<LrAlgebra, ConstructionError> {
    let b = Free3Basis::new(n)?;
    let g = free3_lie_on(&b)?;
    let mut entries = Vec::new();
    let yi = |j: usize, k: usize| b.y_index[&(j, k)] + 1;
    for i in 1..=n {
        for j in (i + 1)..=n {
            // x_j . x_i = -y_{i,j}
            entries.push((j, i, vector::scale(&int(-1), &b.y(i, j))));
        }
    }
    for j in 1..=n {
        for k in (j + 1)..=n {
            for i in 1..=n {
                if k <= i {
                    entries.push((i, yi(j, k), b.z(i, j, k)));
                } else if j < i {
                    entries.push((i, yi(j, k), b.z(k, j, i)));
                    entries.push((yi(j, k), i, vector::sub(&b.z(k, j, i), &b.z(i, j, k))));
                }
                if i <= j {
                    entries.push((yi(j, k), i, vector::scale(&int(-1), &b.z(i, j, k))));
                }
            }
        }
    }
    Ok(LrAlgebra::from_table(g, &entries)?)
}

/// The free 4-step nilpotent Lie algebra on `x_1, x_2`, with
/// `x_3 = [x_1,x_2]`, `x_4 = [x_1,x_3]`, `x_5 = [x_2,x_3]`, `x_6 = [x_1,x_4]`,
/// `x_7 = [x_2,x_4] = [x_1,x_5]`, `x_8 = [x_2,x_5]`.
pub fn free4_two_gen_lie() -> LieAlgebra {
    let e = |i: usize| vector::unit(8, i - 1);
    LieAlgebra::from_table(
        8,
        &[
            (1, 2, e(3)),
            (1, 3, e(4)),
            (2, 3, e(5)),
            (1, 4, e(6)),
            (2, 4, e(7)),
            (1, 5, e(7)),
            (2, 5, e(8)),
        ],
    )
    .expect("free 4-step nilpotent table satisfies Jacobi")
}

/// Left multiplications are the compositions of `ad(x_1)`, `ad(x_2)` that
/// mirror each basis bracket, with `L(x_1) = 0` and `L(x_2) = ad(x_2)`.
pub fn free4_two_gen_lr() -> Result<LrAlgebra, ConstructionError> {
    let g = free4_two_gen_lie();
    let a1 = g.ad_basis(0);
    let a2 = g.ad_basis(1);
    let l3 = &a1 * &a2;
    let l4 = &a1 * &l3;
    let l5 = &a2 * &l3;
    let left = vec![
        Matrix::zeros(8, 8),
        a2.clone(),
        l3,
        l4.clone(),
        l5.clone(),
        &a1 * &l4,
        &a2 * &l4,
        &a2 * &l5,
    ];
    Ok(LrAlgebra::from_left_multiplications(g, &left)?)
}
