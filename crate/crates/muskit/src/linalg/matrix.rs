//! Dense square complex matrices, row-major storage.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::vector::{check_same_dim, ComplexVector};

/// Hermiticity test threshold: `max|M - M^H| <= HERMITICITY_TOL * (1 + max|M|)`.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// A dense `dim x dim` complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data of length `dim * dim`.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("matrix must have dim >= 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidInput(alloc::format!(
                "row-major data has {} entries, expected {}",
                data.len(),
                dim * dim
            )));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput(alloc::format!(
                "non-finite entry at ({}, {})",
                k / dim,
                k % dim
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        Self::new(dim, rows.iter().flatten().copied().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        check_same_dim(self.dim, v.dim())?;
        Ok(ComplexVector::new(self.mul_slice(v.as_slice())).expect("product of finite inputs"))
    }

    pub(crate) fn mul_slice(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let row = self.row(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += row[j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a_ik = self[(i, k)];
                if a_ik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row_k = other.row(k);
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += a_ik * row_k[j];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    /// Largest entry magnitude, `max_ij |M_ij|`.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum (induced infinity norm). Used for
    /// scale-aware residual thresholds; unlike the Frobenius norm it does
    /// not grow with the grid size for banded operators.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Worst deviation from `M = M^H`: `(residual, row, col)` of the
    /// largest `|M_ij - conj(M_ji)|`.
    pub fn hermiticity_residual(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let r = (self[(i, j)] - self[(j, i)].conj()).norm();
                if r > worst.0 {
                    worst = (r, i, j);
                }
            }
        }
        worst
    }

    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        let (r, _, _) = self.hermiticity_residual();
        r <= tol * (1.0 + self.norm_max())
    }

    /// Errors with the worst entry if the matrix fails the Hermiticity
    /// tolerance.
    pub fn require_hermitian(&self) -> Result<()> {
        let (r, i, j) = self.hermiticity_residual();
        if r <= HERMITICITY_TOL * (1.0 + self.norm_max()) {
            Ok(())
        } else {
            Err(Error::Hermiticity {
                residual: r,
                location: Some((i, j)),
            })
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// The Hermitian observable `C` defined by `[A, B] = iC`, i.e.
/// `C = -i(AB - BA)`.
pub fn commutator_c(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    let c = ab.sub(&ba)?.scaled(Complex64::new(0.0, -1.0));
    // For Hermitian inputs the result is Hermitian up to rounding in the
    // two products.
    debug_assert!(
        !(a.is_hermitian_within(HERMITICITY_TOL) && b.is_hermitian_within(HERMITICITY_TOL))
            || c.hermiticity_residual().0
                <= 64.0
                    * (a.dim() as f64)
                    * f64::EPSILON
                    * (1.0 + a.norm_inf())
                    * (1.0 + b.norm_inf())
    );
    Ok(c)
}
