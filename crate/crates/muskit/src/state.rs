//! Normalized state vectors.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{canonical_phase, ComplexVector};
use crate::rng::SplitMix64;

/// Acceptable deviation of a state's norm from 1.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A unit-norm complex amplitude vector. Construction asserts the norm
/// rather than silently repairing it; use [`StateVector::normalized`]
/// to rescale explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    vec: ComplexVector,
}

impl StateVector {
    /// Wraps an already-normalized vector; errors if `||v| - 1|`
    /// exceeds [`NORMALIZATION_TOL`].
    pub fn new(vec: ComplexVector) -> Result<Self> {
        let n = vec.norm();
        if (n - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { norm: n });
        }
        Ok(Self { vec })
    }

    /// Normalizes `v` and wraps it; errors on the zero vector.
    pub fn normalized(vec: ComplexVector) -> Result<Self> {
        let n = vec.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Degenerate(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        Ok(Self {
            vec: vec.scaled(Complex64::new(1.0 / n, 0.0)),
        })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        Self::new(ComplexVector::new(amps)?)
    }

    /// Basis state `e_i`.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        Self::new(ComplexVector::basis(dim, i)?)
    }

    /// A reproducible pseudo-random state derived from `seed`.
    pub fn random(dim: usize, seed: u64) -> Result<Self> {
        let mut rng = SplitMix64::new(seed);
        loop {
            let amps: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.next_symmetric(), rng.next_symmetric()))
                .collect();
            let v = ComplexVector::new(amps)?;
            if v.norm() > 1e-6 {
                return Self::normalized(v);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vec
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.vec.as_slice()
    }

    /// Same state with the largest-magnitude amplitude rotated to be
    /// real positive (ties to the lowest index). Used when states are
    /// serialized, so that output is reproducible.
    pub fn phase_canonicalized(&self) -> Self {
        let mut amps: Vec<Complex64> = self.vec.as_slice().to_vec();
        canonical_phase(&mut amps);
        Self {
            vec: ComplexVector::new(amps).expect("phase rotation preserves finiteness"),
        }
    }

    /// Applies a global phase `e^{i theta}`.
    pub fn with_phase(&self, theta: f64) -> Self {
        Self {
            vec: self.vec.scaled(Complex64::new(theta.cos(), theta.sin())),
        }
    }
}
