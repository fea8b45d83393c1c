//! Exact computations with Lie algebras and LR-algebras given by structure
//! constants over the rationals.

pub mod catalog;
pub mod constraints;
pub mod constructions;
pub mod exactlin;
pub mod extensions;
pub mod lie;
pub mod lr;
mod report;
mod tensor;

pub use exactlin::{int, rat, LinAlgError, Matrix, Rational, Subspace, Vector};
pub use lie::{LieAlgebra, LieError, SeriesReport, SolvabilityReport};
pub use lr::{verify_axioms, LrAlgebra, LrError};
pub use report::{VerificationReport, Violation};
pub use tensor::{SparseVec, Tensor3};
