//! Dense complex vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// A finite, nonempty vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    amps: Vec<Complex64>,
}

impl ComplexVector {
    /// Builds a vector, rejecting empty input and non-finite entries.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidInput("vector must have dim >= 1".into()));
        }
        if let Some((i, _)) = amps
            .iter()
            .enumerate()
            .find(|(_, z)| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput(alloc::format!(
                "non-finite amplitude at index {i}"
            )));
        }
        Ok(Self { amps })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// i-th standard basis vector of the given dimension.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::InvalidInput(alloc::format!(
                "basis index {i} out of range for dim {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[i] = Complex64::new(1.0, 0.0);
        Self::new(amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Complex64> {
        self.amps.iter()
    }

    pub fn norm(&self) -> f64 {
        norm_slice(&self.amps)
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * z).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(Self {
            amps: self
                .amps
                .iter()
                .zip(other.amps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(Self {
            amps: self
                .amps
                .iter()
                .zip(other.amps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.amps[i]
    }
}

pub(crate) fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

/// Inner product, conjugate-linear in the first argument:
/// `(psi, phi) = Σ conj(psi_i)·phi_i`.
pub fn inner(psi: &ComplexVector, phi: &ComplexVector) -> Result<Complex64> {
    check_same_dim(psi.dim(), phi.dim())?;
    Ok(inner_slice(psi.as_slice(), phi.as_slice()))
}

/// Euclidean norm `sqrt((phi, phi))`; zero only for the zero vector.
pub fn norm(phi: &ComplexVector) -> f64 {
    phi.norm()
}

pub(crate) fn inner_slice(psi: &[Complex64], phi: &[Complex64]) -> Complex64 {
    psi.iter()
        .zip(phi.iter())
        .fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b)
}

pub(crate) fn norm_slice(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
