//! Hermitian and general complex eigendecomposition on top of the Schur
//! engine.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::Result;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::schur::schur;
use crate::linalg::vector::{inner_slice, norm_slice, ComplexVector};

/// Per-pair residual bound factor for [`general_eigenpairs`]:
/// every returned pair satisfies `|M v - mu v| <= 1e-8 * (1 + |M|_inf)`.
pub const GENERAL_RESIDUAL_TOL: f64 = 1e-8;

/// Overlap threshold above which two candidate eigenvectors with equal
/// eigenvalues count as the same direction (defective matrices).
const DUPLICATE_OVERLAP: f64 = 1.0 - 1e-8;

/// One eigenvalue/eigenvector pair with its verified residual
/// `|M v - value v|` (vector 2-norm, unit `v`).
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: ComplexVector,
    pub residual: f64,
}

/// Rotates `v` so its largest-magnitude entry is real positive; ties
/// break toward the lowest index. Gives eigensolvers and serialized
/// states a reproducible phase.
pub fn canonical_phase(amps: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, z) in amps.iter().enumerate() {
        let m = z.norm();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag == 0.0 {
        return;
    }
    let rot = amps[best].conj() / best_mag;
    for z in amps.iter_mut() {
        *z *= rot;
    }
}

fn eigvec_residual(m: &ComplexMatrix, value: Complex64, v: &[Complex64]) -> f64 {
    let mv = m.mul_slice(v);
    let mut s = 0.0;
    for (a, b) in mv.iter().zip(v.iter()) {
        s += (a - value * b).norm_sqr();
    }
    s.sqrt()
}

/// Eigenpairs of a Hermitian matrix: real eigenvalues in ascending
/// order, orthonormal eigenvectors. Errors if the input fails the
/// Hermiticity tolerance.
pub fn hermitian_eigenpairs(m: &ComplexMatrix) -> Result<Vec<EigenPair>> {
    m.require_hermitian()?;
    let dec = schur(m)?;
    let n = m.dim();
    // For Hermitian input the Schur form is diagonal up to rounding, so
    // the Schur basis itself is the orthonormal eigenbasis.
    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|i| {
            let value = Complex64::new(dec.t[(i, i)].re, 0.0);
            let mut amps: Vec<Complex64> = (0..n).map(|r| dec.q[(r, i)]).collect();
            canonical_phase(&mut amps);
            let residual = eigvec_residual(m, value, &amps);
            EigenPair {
                value,
                vector: ComplexVector::new(amps).expect("unitary column is finite"),
                residual,
            }
        })
        .collect();
    pairs.sort_by(|a, b| a.value.re.total_cmp(&b.value.re));
    Ok(pairs)
}

/// Null-space direction of `(T - T[i,i] I)` restricted to the leading
/// `i+1` coordinates of the upper-triangular `t`, by back-substitution
/// with guarded denominators.
fn triangular_null_vector(t: &ComplexMatrix, i: usize, den_floor: f64) -> Vec<Complex64> {
    let mu = t[(i, i)];
    let mut y = vec![Complex64::new(0.0, 0.0); i + 1];
    y[i] = Complex64::new(1.0, 0.0);
    for j in (0..i).rev() {
        let mut num = Complex64::new(0.0, 0.0);
        for k in j + 1..=i {
            num += t[(j, k)] * y[k];
        }
        let mut den = t[(j, j)] - mu;
        if den.norm() < den_floor {
            den = Complex64::new(den_floor, 0.0);
        }
        y[j] = -num / den;
        // Rescale to dodge overflow along near-defective chains.
        let mag = y[j].norm();
        if mag > 1e100 {
            let s = 1.0 / mag;
            for z in y[j..=i].iter_mut() {
                *z *= s;
            }
        }
    }
    y
}

/// Eigenpairs of a general (possibly non-Hermitian, possibly defective)
/// matrix. Only pairs meeting the documented residual bound are
/// returned, duplicates from defective eigenvalues are dropped, and the
/// result is ordered by `(Re value, Im value)`. A defective matrix
/// yields fewer than `dim` pairs.
pub fn general_eigenpairs(m: &ComplexMatrix) -> Result<Vec<EigenPair>> {
    let dec = schur(m)?;
    let n = m.dim();
    let m_norm = m.norm_inf();
    let residual_bound = GENERAL_RESIDUAL_TOL * (1.0 + m_norm);
    let den_floor = f64::EPSILON * (1.0 + dec.t.norm_inf());

    let mut found: Vec<EigenPair> = Vec::with_capacity(n);
    for i in 0..n {
        let mu = dec.t[(i, i)];
        let y = triangular_null_vector(&dec.t, i, den_floor);
        // v = Q[:, 0..=i] y, then normalize.
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        for (k, &yk) in y.iter().enumerate() {
            if yk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for r in 0..n {
                amps[r] += dec.q[(r, k)] * yk;
            }
        }
        let vnorm = norm_slice(&amps);
        if vnorm == 0.0 {
            continue;
        }
        for z in amps.iter_mut() {
            *z /= vnorm;
        }
        canonical_phase(&mut amps);
        let residual = eigvec_residual(m, mu, &amps);
        if residual <= residual_bound {
            found.push(EigenPair {
                value: mu,
                vector: ComplexVector::new(amps).expect("normalized vector is finite"),
                residual,
            });
        }
    }

    found.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });

    let value_tol = GENERAL_RESIDUAL_TOL * (1.0 + m_norm);
    let mut accepted: Vec<EigenPair> = Vec::with_capacity(found.len());
    for pair in found {
        let dup = accepted.iter().any(|p| {
            (p.value - pair.value).norm() <= value_tol
                && inner_slice(p.vector.as_slice(), pair.vector.as_slice()).norm()
                    >= DUPLICATE_OVERLAP
        });
        if !dup {
            accepted.push(pair);
        }
    }
    Ok(accepted)
}
