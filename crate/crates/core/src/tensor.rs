use num_traits::Zero;

use crate::exactlin::{Rational, Vector};

/// Sparse coordinate vector: `(index, coefficient)` pairs with nonzero
/// coefficients in increasing index order.
pub type SparseVec = Vec<(usize, Rational)>;

/// Structure constants of a bilinear map on `Q^n`: entry `(i, j, k)` is the
/// `k`-th coordinate of the image of `(e_i, e_j)`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 {
            dim,
            data: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let n = self.dim;
        self.data[(i * n + j) * n + k] = value;
    }

    /// Image of `(e_i, e_j)` as a dense vector.
    pub fn entry(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [Rational] {
        let start = (i * self.dim + j) * self.dim;
        &mut self.data[start..start + self.dim]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: &[Rational]) {
        self.entry_mut(i, j).clone_from_slice(v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn raw(&self) -> &[Rational] {
        &self.data
    }

    pub fn raw_mut(&mut self) -> &mut [Rational] {
        &mut self.data
    }

    pub(crate) fn sparse_entries(&self) -> Vec<SparseVec> {
        (0..self.dim * self.dim)
            .map(|ij| {
                let start = ij * self.dim;
                self.data[start..start + self.dim]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Applies the bilinear map given by sparse basis images to two dense vectors.
pub(crate) fn apply_bilinear(
    n: usize,
    table: &[SparseVec],
    u: &[Rational],
    v: &[Rational],
) -> Vector {
    let mut out = vec![Rational::zero(); n];
    let v_nz: Vec<(usize, &Rational)> =
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for (i, a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for &(j, b) in &v_nz {
            let img = &table[i * n + j];
            if img.is_empty() {
                continue;
            }
            let ab = a * b;
            for (k, c) in img {
                out[*k] += &ab * c;
            }
        }
    }
    out
}

/// Same as [`apply_bilinear`] for sparse inputs, accumulating into `out`.
pub(crate) fn apply_bilinear_sparse_into(
    n: usize,
    table: &[SparseVec],
    scale: &Rational,
    u: &[(usize, Rational)],
    v: &[(usize, Rational)],
    out: &mut [Rational],
) {
    for (i, a) in u {
        for (j, b) in v {
            let img = &table[i * n + j];
            if img.is_empty() {
                continue;
            }
            let ab = scale * a * b;
            for (k, c) in img {
                out[*k] += &ab * c;
            }
        }
    }
}
