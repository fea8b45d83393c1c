//! LR-algebras: products whose left multiplications commute pairwise and
//! whose right multiplications commute pairwise, compatible with a given Lie
//! bracket through `x.y - y.x = [x, y]`.

mod lemmas;
mod verify;

pub use lemmas::{
    CHECK_AD_LEFT, CHECK_AD_RIGHT, CHECK_BRACKET_TIMES, CHECK_CENTER_ANNIHILATES, CHECK_GRADING,
    CHECK_IDEAL_PRODUCTS, CHECK_LEFT_DERIVATION, CHECK_LOWER_IDEALS, CHECK_METABELIAN,
    CHECK_RIGHT_DERIVATION, CHECK_SQUARE_COMMUTES, CHECK_TIMES_BRACKET, CHECK_UPPER_IDEALS,
};
pub use verify::{verify_axioms, CHECK_COMPAT, CHECK_LR1, CHECK_LR2};

use thiserror::Error;

use crate::exactlin::{vector, LinAlgError, Matrix, Rational, Subspace, Vector};
use crate::lie::{LieAlgebra, LieError};
use crate::report::VerificationReport;
use crate::tensor::{apply_bilinear, SparseVec, Tensor3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LrError {
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("product entry e{i}.e{j} has {found} coordinates, expected {expected}")]
    EntryLength {
        i: usize,
        j: usize,
        expected: usize,
        found: usize,
    },
    #[error("conflicting product entries for e{i}.e{j}")]
    DuplicateEntry { i: usize, j: usize },
    #[error("product tensor has dimension {found}, Lie algebra has {expected}")]
    TensorDimension { expected: usize, found: usize },
    #[error("x.(y.z) = y.(x.z) fails at (e{i},e{j},e{k}): residual {}", vector::format_combination(.residual, "e"))]
    Lr1Violation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
    #[error("(x.y).z = (x.z).y fails at (e{i},e{j},e{k}): residual {}", vector::format_combination(.residual, "e"))]
    Lr2Violation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
    #[error("x.y - y.x = [x,y] fails at (e{i},e{j}): residual {}", vector::format_combination(.residual, "e"))]
    CompatViolation {
        i: usize,
        j: usize,
        residual: Vector,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// An LR-structure on a Lie algebra: `e_i . e_j = sum_k p[i][j][k] e_k`.
///
/// Values are only constructed after all three defining identities have been
/// checked on basis triples; bilinearity extends them to all vectors.
#[derive(Clone, Debug)]
pub struct LrAlgebra {
    lie: LieAlgebra,
    product: Tensor3,
    table: Vec<SparseVec>,
    complete: bool,
}

impl PartialEq for LrAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.lie == other.lie && self.product == other.product
    }
}

impl Eq for LrAlgebra {}

impl LrAlgebra {
    /// Products given as `(i, j, e_i . e_j)` with 1-based indices; omitted
    /// products are zero.
    pub fn from_table(
        lie: LieAlgebra,
        entries: &[(usize, usize, Vector)],
    ) -> Result<Self, LrError> {
        let n = lie.dim();
        let mut p = Tensor3::zeros(n);
        let mut seen = vec![false; n * n];
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx == 0 || idx > n {
                    return Err(LrError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            if v.len() != n {
                return Err(LrError::EntryLength {
                    i,
                    j,
                    expected: n,
                    found: v.len(),
                });
            }
            let slot = (i - 1) * n + (j - 1);
            if seen[slot] && p.entry(i - 1, j - 1) != v.as_slice() {
                return Err(LrError::DuplicateEntry { i, j });
            }
            seen[slot] = true;
            p.set_entry(i - 1, j - 1, v);
        }
        Self::from_tensor(lie, p)
    }

    pub fn from_tensor(lie: LieAlgebra, product: Tensor3) -> Result<Self, LrError> {
        if product.dim() != lie.dim() {
            return Err(LrError::TensorDimension {
                expected: lie.dim(),
                found: product.dim(),
            });
        }
        if let Some(v) = verify_axioms(&lie, &product).violations.into_iter().next() {
            let (i, j) = (v.indices[0], v.indices[1]);
            let residual = v.residual;
            return Err(match v.check.as_str() {
                CHECK_LR1 => LrError::Lr1Violation {
                    i,
                    j,
                    k: v.indices[2],
                    residual,
                },
                CHECK_LR2 => LrError::Lr2Violation {
                    i,
                    j,
                    k: v.indices[2],
                    residual,
                },
                _ => LrError::CompatViolation { i, j, residual },
            });
        }
        Ok(Self::new_unchecked(lie, product))
    }

    /// Product from left multiplication operators: column `j` of `left[i]`
    /// is `e_i . e_j`.
    pub fn from_left_multiplications(lie: LieAlgebra, left: &[Matrix]) -> Result<Self, LrError> {
        let n = lie.dim();
        if left.len() != n {
            return Err(LrError::TensorDimension {
                expected: n,
                found: left.len(),
            });
        }
        let mut p = Tensor3::zeros(n);
        for (i, m) in left.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(LinAlgError::DimensionMismatch {
                    expected: n,
                    found: m.rows(),
                }
                .into());
            }
            for j in 0..n {
                p.set_entry(i, j, &m.column(j));
            }
        }
        Self::from_tensor(lie, p)
    }

    fn new_unchecked(lie: LieAlgebra, product: Tensor3) -> Self {
        let table = product.sparse_entries();
        let n = lie.dim();
        let complete = (0..n).all(|i| {
            left_mult_from(&product, i)
                .is_nilpotent()
                .expect("left multiplications are square")
        });
        LrAlgebra {
            lie,
            product,
            table,
            complete,
        }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn product_tensor(&self) -> &Tensor3 {
        &self.product
    }

    pub(crate) fn table(&self) -> &[SparseVec] {
        &self.table
    }

    pub fn product(&self, u: &[Rational], v: &[Rational]) -> Result<Vector, LrError> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        Ok(self.product_unchecked(u, v))
    }

    pub(crate) fn product_unchecked(&self, u: &[Rational], v: &[Rational]) -> Vector {
        apply_bilinear(self.dim(), &self.table, u, v)
    }

    /// Matrix of `y -> x . y`.
    pub fn left_mult(&self, x: &[Rational]) -> Result<Matrix, LrError> {
        self.check_len(x.len())?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.product_unchecked(x, &vector::unit(n, j)))
            .collect();
        Ok(Matrix::from_columns(n, &cols)?)
    }

    /// Matrix of `y -> y . x`.
    pub fn right_mult(&self, x: &[Rational]) -> Result<Matrix, LrError> {
        self.check_len(x.len())?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.product_unchecked(&vector::unit(n, j), x))
            .collect();
        Ok(Matrix::from_columns(n, &cols)?)
    }

    /// `L(e_i)` for a 0-based index.
    pub fn left_mult_basis(&self, i: usize) -> Matrix {
        left_mult_from(&self.product, i)
    }

    /// `R(e_i)` for a 0-based index.
    pub fn right_mult_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |r, c| self.product.get(c, i, r).clone())
    }

    /// Whether every left multiplication is nilpotent. Checked on the basis
    /// at construction; the `L(e_i)` commute, so this covers all of `L(A)`.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn verify(&self) -> VerificationReport {
        verify_axioms(&self.lie, &self.product)
    }

    /// `{x : x.y = y.x for all y}`, which is the center of the Lie algebra.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let blocks: Vec<Matrix> = (0..n)
            .map(|i| &self.left_mult_basis(i) - &self.right_mult_basis(i))
            .collect();
        let stacked = Matrix::from_fn(n * n, n, |r, c| blocks[r / n].get(r % n, c).clone());
        stacked.nullspace()
    }

    /// Span of all `a . b` with `a` in `i_space`, `b` in `j_space`.
    pub fn ideal_product(
        &self,
        i_space: &Subspace,
        j_space: &Subspace,
    ) -> Result<Subspace, LrError> {
        self.check_len(i_space.ambient_dim())?;
        self.check_len(j_space.ambient_dim())?;
        let mut vecs = Vec::new();
        for a in i_space.basis_vectors() {
            for b in j_space.basis_vectors() {
                vecs.push(self.product_unchecked(a, b));
            }
        }
        Ok(Subspace::span(self.dim(), vecs)?)
    }

    pub fn bracket_span(
        &self,
        i_space: &Subspace,
        j_space: &Subspace,
    ) -> Result<Subspace, LrError> {
        Ok(self.lie.bracket_span(i_space, j_space)?)
    }

    /// `A . I` and `I . A` both lie in `I`.
    pub fn is_two_sided_ideal(&self, space: &Subspace) -> Result<bool, LrError> {
        Ok(self.ideal_witness(space)?.is_none())
    }

    /// First vector `e_a . v` or `v . e_a` leaving `space`, if any.
    pub(crate) fn ideal_witness(
        &self,
        space: &Subspace,
    ) -> Result<Option<(usize, usize, Vector)>, LrError> {
        self.check_len(space.ambient_dim())?;
        let n = self.dim();
        for a in 0..n {
            let ea = vector::unit(n, a);
            for (r, v) in space.basis_vectors().enumerate() {
                for w in [
                    self.product_unchecked(&ea, v),
                    self.product_unchecked(v, &ea),
                ] {
                    let rem = space.reduce(&w)?;
                    if !vector::is_zero(&rem) {
                        return Ok(Some((a, r, w)));
                    }
                }
            }
        }
        Ok(None)
    }

    fn check_len(&self, len: usize) -> Result<(), LrError> {
        if len != self.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.dim(),
                found: len,
            }
            .into());
        }
        Ok(())
    }
}

fn left_mult_from(product: &Tensor3, i: usize) -> Matrix {
    let n = product.dim();
    Matrix::from_fn(n, n, |r, c| product.get(i, c, r).clone())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactlin::{int, rat};

    pub(crate) fn e(n: usize, i: usize) -> Vector {
        vector::unit(n, i - 1)
    }

    pub(crate) fn r2() -> LieAlgebra {
        LieAlgebra::from_table(2, &[(1, 2, e(2, 1))]).unwrap()
    }

    pub(crate) fn n3() -> LieAlgebra {
        LieAlgebra::from_table(3, &[(1, 2, e(3, 3))]).unwrap()
    }

    pub(crate) fn n3_a3() -> LrAlgebra {
        let half = vector::scale(&rat(1, 2), &e(3, 3));
        let neg_half = vector::scale(&rat(-1, 2), &e(3, 3));
        LrAlgebra::from_table(n3(), &[(1, 2, half), (2, 1, neg_half)]).unwrap()
    }

    #[test]
    fn r2_structures() {
        let a2 = LrAlgebra::from_table(r2(), &[(1, 2, e(2, 1))]).unwrap();
        assert!(a2.is_complete());
        let l1 = a2.left_mult(&e(2, 1)).unwrap();
        assert_eq!(l1.column(1), e(2, 1));
        assert!(vector::is_zero(&l1.column(0)));

        let a1 = LrAlgebra::from_table(
            r2(),
            &[(1, 1, e(2, 1)), (2, 1, vector::scale(&int(-1), &e(2, 1)))],
        )
        .unwrap();
        assert!(!a1.is_complete());
        let a3 = LrAlgebra::from_table(r2(), &[(2, 1, vector::scale(&int(-1), &e(2, 1)))]).unwrap();
        assert!(!a3.is_complete());
    }

    #[test]
    fn heisenberg_halved_product_is_valid() {
        let a = n3_a3();
        assert!(a.is_complete());
        assert_eq!(a.center(), Subspace::coordinate(3, [2]));
    }

    #[test]
    fn axiom_failures_are_reported() {
        let err = LrAlgebra::from_table(n3(), &[]).unwrap_err();
        assert_eq!(
            err,
            LrError::CompatViolation {
                i: 1,
                j: 2,
                residual: vector::scale(&int(-1), &e(3, 3))
            }
        );
        // e1.e2 = e3 alone is a valid structure; adding e2.e2 = e2 breaks LR1.
        assert!(LrAlgebra::from_table(n3(), &[(1, 2, e(3, 3))]).is_ok());
        let err = LrAlgebra::from_table(n3(), &[(1, 2, e(3, 3)), (2, 2, e(3, 2))]).unwrap_err();
        assert!(matches!(err, LrError::Lr1Violation { .. }), "{err}");
        assert!(matches!(
            LrAlgebra::from_table(n3(), &[(4, 1, e(3, 1))]),
            Err(LrError::IndexOutOfRange { index: 4, dim: 3 })
        ));
    }

    #[test]
    fn left_minus_right_is_adjoint() {
        let a = n3_a3();
        let x = vec![int(2), rat(-1, 3), int(5)];
        let l = a.left_mult(&x).unwrap();
        let r = a.right_mult(&x).unwrap();
        assert_eq!(&l - &r, a.lie().ad(&x).unwrap());
    }

    #[test]
    fn ideal_products() {
        let a = n3_a3();
        let full = Subspace::full(3);
        let zero = Subspace::zero(3);
        assert!(a.ideal_product(&full, &zero).unwrap().is_zero());
        assert_eq!(
            a.ideal_product(&full, &full).unwrap(),
            Subspace::coordinate(3, [2])
        );
        assert!(a.is_two_sided_ideal(&Subspace::coordinate(3, [2])).unwrap());
        assert!(!a.is_two_sided_ideal(&Subspace::coordinate(3, [0])).unwrap());
    }

    #[test]
    fn abelian_commutative_associative_center_is_everything() {
        // e1.e1 = e2 on Q^2 is commutative and associative.
        let a = LrAlgebra::from_table(LieAlgebra::abelian(2), &[(1, 1, e(2, 2))]).unwrap();
        assert_eq!(a.center(), Subspace::full(2));
        assert!(a.lemma_suite(2).ok());
    }
}
