use num_traits::Zero;

use super::{vector, LinAlgError, Matrix, Rational, Vector};

/// A linear subspace of `Q^n`, stored by a basis in reduced row echelon form.
///
/// The basis has no zero rows and its pivot columns strictly increase, so
/// equality of subspaces is equality of the stored data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors, each of length `ambient`.
    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator,
        I::Item: AsRef<[Rational]>,
    {
        let rows: Vec<Vector> = vectors
            .into_iter()
            .map(|v| {
                let v = v.as_ref();
                if v.len() != ambient {
                    Err(LinAlgError::DimensionMismatch {
                        expected: ambient,
                        found: v.len(),
                    })
                } else {
                    Ok(v.to_vec())
                }
            })
            .filter(|v| v.as_ref().map_or(true, |v| !vector::is_zero(v)))
            .collect::<Result<_, _>>()?;
        Ok(Self::from_matrix(&Matrix::from_rows(ambient, rows)?))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (red, pivots) = m.rref_with_pivots();
        let basis = Matrix::from_fn(pivots.len(), m.cols(), |r, c| red.get(r, c).clone());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            ambient,
            indices.into_iter().map(|i| vector::unit(ambient, i)),
        )
        .expect("unit vectors have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Indices of the standard basis vectors that complement this subspace.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Remainder of `v` modulo the subspace: zero in every pivot coordinate.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vector, LinAlgError> {
        self.check_len(v.len())?;
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if !c.is_zero() {
                vector::axpy(&mut out, &-c, self.basis.row(row));
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinAlgError> {
        Ok(vector::is_zero(&self.reduce(v)?))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_len(other.ambient)?;
        Self::span(
            self.ambient,
            self.basis_vectors().chain(other.basis_vectors()),
        )
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        other.check_len(self.ambient)?;
        for v in self.basis_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vectors `w` with `w . v = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.rows() == 0 {
            return Subspace::full(self.ambient);
        }
        self.basis.nullspace()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_len(other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    fn check_len(&self, len: usize) -> Result<(), LinAlgError> {
        if len != self.ambient {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient,
                found: len,
            });
        }
        Ok(())
    }
}
