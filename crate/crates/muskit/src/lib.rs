//! Uncertainty statistics for pairs of observables.
//!
//! Given two Hermitian operators `A`, `B` and a normalized state ψ, the
//! product of the standard deviations obeys ΔA·ΔB ≥ ½|⟨C⟩| where the
//! observable `C` is fixed by the commutator `[A,B] = iC`. States that
//! saturate the bound (minimum uncertainty states, MUS) are exactly the
//! eigenvectors of the non-Hermitian operator `K = A − iλB` for a real
//! parameter λ with |λ| = ΔA/ΔB and sign opposite to ⟨C⟩.
//!
//! This crate provides:
//! - a dense complex linear-algebra kernel, including Hermitian and
//!   general (non-Hermitian) eigensolvers ([`linalg`]);
//! - standard observables: spin components and position/momentum on a
//!   1-D grid ([`observables`]);
//! - uncertainty reports and Schwarz-inequality diagnostics
//!   ([`uncertainty`]);
//! - the MUS decision procedure and eigenvector-based MUS synthesis,
//!   including the Gaussian wave-packet benchmark ([`mus`]);
//! - an independent cross-check that minimizes a smooth defect
//!   functional over the unit sphere ([`variational`]).
//!
//! The crate is `no_std` (with `alloc`); all IO and file formats live in
//! the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod mus;
pub mod observables;
pub mod rng;
pub mod state;
pub mod uncertainty;
pub mod variational;

pub use error::{Error, Result};
pub use num_complex::Complex64;
