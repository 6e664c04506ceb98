//! Dense complex vector/matrix kernel: inner products, norms,
//! commutators, Hermitian and general eigendecomposition.
//!
//! All types are immutable after construction and all operations are
//! pure, so everything here is safe to share across threads.

mod eigen;
mod matrix;
mod schur;
mod vector;

pub use eigen::{
    canonical_phase, general_eigenpairs, hermitian_eigenpairs, EigenPair, GENERAL_RESIDUAL_TOL,
};
pub use matrix::{commutator_c, ComplexMatrix, HERMITICITY_TOL};
pub use schur::{schur, Schur};
pub use vector::{inner, norm, ComplexVector};

pub(crate) use vector::{inner_slice, norm_slice};
