//! Exact rational scalars, dense matrices and canonical subspaces.
//!
//! Everything in the crate is computed over the rationals. Subspaces are kept
//! in reduced row echelon form so that two subspaces are equal exactly when
//! their stored bases are identical.

mod matrix;
mod rational;
mod subspace;
pub mod vector;

pub use matrix::Matrix;
pub use rational::{int, parse_rational, rat, ParseRationalError, Rational};
pub use subspace::Subspace;
pub use vector::Vector;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows have unequal lengths")]
    Ragged,
}
