//! Lie algebras given by structure constants.

mod series;

pub use series::{SeriesReport, SolvabilityReport};

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{vector, LinAlgError, Matrix, Rational, Subspace, Vector};
use crate::tensor::{apply_bilinear, SparseVec, Tensor3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket entry [e{i},e{j}] has {found} coordinates, expected {expected}")]
    EntryLength {
        i: usize,
        j: usize,
        expected: usize,
        found: usize,
    },
    #[error("antisymmetry conflict at [e{i},e{j}]")]
    AntisymmetryConflict { i: usize, j: usize },
    #[error("Jacobi identity fails for (e{i},e{j},e{k}): residual {}", vector::format_combination(.residual, "e"))]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
    #[error("subspace is not an ideal: [e{basis_index}, v] leaves it for ideal basis vector {ideal_vector}")]
    NotAnIdeal {
        basis_index: usize,
        ideal_vector: usize,
    },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A finite-dimensional Lie algebra over `Q` with basis `e_1, ..., e_n` and
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`.
///
/// The full tensor is stored (both orientations), and construction checks
/// antisymmetry and the Jacobi identity on all basis triples.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    structure: Tensor3,
    table: Vec<SparseVec>,
    names: Option<Vec<String>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure
    }
}

impl Eq for LieAlgebra {}

impl LieAlgebra {
    /// Builds an algebra from bracket entries `(i, j, [e_i, e_j])` with
    /// 1-based indices. `[e_j, e_i]` is filled in by antisymmetry and omitted
    /// brackets are zero.
    pub fn from_table(dim: usize, entries: &[(usize, usize, Vector)]) -> Result<Self, LieError> {
        let mut c = Tensor3::zeros(dim);
        let mut seen = vec![false; dim * dim];
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx == 0 || idx > dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if v.len() != dim {
                return Err(LieError::EntryLength {
                    i,
                    j,
                    expected: dim,
                    found: v.len(),
                });
            }
            let (a, b) = (i - 1, j - 1);
            if a == b {
                if !vector::is_zero(v) {
                    return Err(LieError::AntisymmetryConflict { i, j });
                }
                continue;
            }
            let neg: Vector = v.iter().map(|x| -x).collect();
            if seen[a * dim + b] {
                if c.entry(a, b) != v.as_slice() {
                    return Err(LieError::AntisymmetryConflict { i, j });
                }
                continue;
            }
            seen[a * dim + b] = true;
            seen[b * dim + a] = true;
            c.set_entry(a, b, v);
            c.set_entry(b, a, &neg);
        }
        Self::from_tensor(c)
    }

    /// Validates a full structure tensor.
    pub fn from_tensor(structure: Tensor3) -> Result<Self, LieError> {
        let n = structure.dim();
        for i in 0..n {
            if !vector::is_zero(structure.entry(i, i)) {
                return Err(LieError::AntisymmetryConflict { i: i + 1, j: i + 1 });
            }
            for j in i + 1..n {
                let a = structure.entry(i, j);
                let b = structure.entry(j, i);
                if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(LieError::AntisymmetryConflict { i: i + 1, j: j + 1 });
                }
            }
        }
        let g = LieAlgebra {
            table: structure.sparse_entries(),
            structure,
            names: None,
        };
        if let Some((i, j, k, residual)) = g.jacobi_violations().into_iter().next() {
            return Err(LieError::JacobiViolation { i, j, k, residual });
        }
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_tensor(Tensor3::zeros(dim)).expect("zero bracket is a Lie bracket")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.structure
    }

    /// `[e_i, e_j]` for 0-based indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        self.structure.entry(i, j)
    }

    pub(crate) fn sparse_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub(crate) fn table(&self) -> &[SparseVec] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// All basis triples `(i, j, k)` (1-based) where the Jacobi sum is nonzero.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize, Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vector::zero(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, coeff) in self.sparse_bracket(a, b) {
                            for (t, d) in self.sparse_bracket(*m, c) {
                                acc[*t] += coeff * d;
                            }
                        }
                    }
                    if !vector::is_zero(&acc) {
                        out.push((i + 1, j + 1, k + 1, acc));
                    }
                }
            }
        }
        out
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vector, LieError> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[Rational], v: &[Rational]) -> Vector {
        apply_bilinear(self.dim(), &self.table, u, v)
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad(&self, x: &[Rational]) -> Result<Matrix, LieError> {
        self.check_len(x.len())?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.bracket_unchecked(x, &vector::unit(n, j)))
            .collect();
        Ok(Matrix::from_columns(n, &cols)?)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |r, c| self.structure.get(i, c, r).clone())
    }

    /// Span of all brackets `[a, b]` with `a` in `a_space`, `b` in `b_space`.
    pub fn bracket_span(
        &self,
        a_space: &Subspace,
        b_space: &Subspace,
    ) -> Result<Subspace, LieError> {
        self.check_len(a_space.ambient_dim())?;
        self.check_len(b_space.ambient_dim())?;
        let mut vecs = Vec::new();
        for a in a_space.basis_vectors() {
            for b in b_space.basis_vectors() {
                vecs.push(self.bracket_unchecked(a, b));
            }
        }
        Ok(Subspace::span(self.dim(), vecs)?)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full).expect("same ambient")
    }

    /// Center: the common kernel of all `ad(e_i)`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let stacked = Matrix::from_fn(n * n, n, |r, c| {
            let (i, row) = (r / n, r % n);
            self.structure.get(i, c, row).clone()
        });
        stacked.nullspace()
    }

    /// Whether `[g, I]` lies in `I`; on failure returns the 0-based witness
    /// pair (basis index of `g`, index of the ideal basis vector).
    pub fn ideal_witness(&self, ideal: &Subspace) -> Result<Option<(usize, usize)>, LieError> {
        self.check_len(ideal.ambient_dim())?;
        let n = self.dim();
        for i in 0..n {
            let ei = vector::unit(n, i);
            for (r, v) in ideal.basis_vectors().enumerate() {
                if !ideal.contains(&self.bracket_unchecked(&ei, v))? {
                    return Ok(Some((i, r)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_ideal(&self, space: &Subspace) -> Result<bool, LieError> {
        Ok(self.ideal_witness(space)?.is_none())
    }

    /// Quotient by an ideal, on the complement spanned by the standard basis
    /// vectors at the non-pivot columns of the ideal's echelon basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient, LieError> {
        if let Some((i, r)) = self.ideal_witness(ideal)? {
            return Err(LieError::NotAnIdeal {
                basis_index: i + 1,
                ideal_vector: r + 1,
            });
        }
        let n = self.dim();
        let complement = ideal.non_pivots();
        let q = complement.len();
        let project = |v: &[Rational]| -> Vector {
            let red = ideal.reduce(v).expect("ambient length");
            complement.iter().map(|&c| red[c].clone()).collect()
        };
        let projection = Matrix::from_columns(
            q,
            &(0..n)
                .map(|j| project(&vector::unit(n, j)))
                .collect::<Vec<_>>(),
        )?;
        let mut c = Tensor3::zeros(q);
        for a in 0..q {
            for b in 0..q {
                let br = self.bracket_basis(complement[a], complement[b]);
                c.set_entry(a, b, &project(br));
            }
        }
        let algebra = LieAlgebra::from_tensor(c)?;
        Ok(Quotient {
            algebra,
            projection,
            complement,
        })
    }

    fn check_len(&self, len: usize) -> Result<(), LieError> {
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

/// A quotient `g / I` together with the projection `g -> g / I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// `dim(g/I) x dim(g)` matrix of the projection.
    pub projection: Matrix,
    /// Standard basis indices of `g` (0-based) representing the quotient basis.
    pub complement: Vec<usize>,
}

impl Quotient {
    /// Lifts a quotient vector to `g` through the chosen complement.
    pub fn lift(&self, v: &[Rational]) -> Vector {
        let n = self.projection.cols();
        let mut out = vector::zero(n);
        for (x, &c) in v.iter().zip(&self.complement) {
            out[c] = x.clone();
        }
        out
    }
}
