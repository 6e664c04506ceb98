//! Scalar uncertainty statistics for a `(psi, A, B)` triple, plus
//! Schwarz-inequality diagnostics.
//!
//! The quantities follow the usual conventions: `a = <A>`, `b = <B>`,
//! `c = <C>` with `[A,B] = iC`, `dA = |(A - a) psi|`, and the product
//! bound `dA dB >= |c| / 2`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{inner_slice, norm_slice, ComplexVector};
use crate::observables::Observable;
use crate::state::StateVector;

/// Bound on `|Im <psi, A psi>|` before an expectation value is rejected.
pub const IMAG_EXPECTATION_TOL: f64 = 1e-10;

/// Relative threshold deciding Schwarz-equality proportionality.
pub const PROPORTIONALITY_TOL: f64 = 1e-9;

/// All scalar statistics for one `(psi, A, B)` triple.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyReport {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    /// `delta_a * delta_b`.
    pub product: f64,
    /// `|c| / 2`.
    pub bound: f64,
    /// `product - bound`; nonnegative up to rounding for Hermitian
    /// inputs and normalized states.
    pub defect: f64,
}

/// Outcome of the Schwarz-inequality equality test for a vector pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzWitness {
    /// `|psi||phi| - |(psi, phi)| >= 0`.
    pub gap: f64,
    /// Whether `psi = z phi` within tolerance.
    pub proportional: bool,
    /// The witness `z` when `proportional` holds.
    pub z: Option<Complex64>,
}

fn check_dims(psi: &StateVector, obs: &Observable) -> Result<()> {
    if psi.dim() == obs.dim() {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: obs.dim(),
            found: psi.dim(),
        })
    }
}

/// `Re (psi, A psi)`, rejecting results whose imaginary part exceeds
/// `imag_tol`.
pub fn expectation_with_tol(psi: &StateVector, a: &Observable, imag_tol: f64) -> Result<f64> {
    check_dims(psi, a)?;
    let av = a.matrix().mul_slice(psi.as_slice());
    let e = inner_slice(psi.as_slice(), &av);
    if e.im.abs() > imag_tol {
        return Err(Error::Hermiticity {
            residual: e.im.abs(),
            location: None,
        });
    }
    Ok(e.re)
}

/// Expectation value at the default imaginary-part tolerance.
pub fn expectation(psi: &StateVector, a: &Observable) -> Result<f64> {
    expectation_with_tol(psi, a, IMAG_EXPECTATION_TOL)
}

/// Shifted image `(A - <A>) psi` together with the expectation value.
pub(crate) fn shifted_image(
    psi: &StateVector,
    a: &Observable,
    imag_tol: f64,
) -> Result<(f64, Vec<Complex64>)> {
    check_dims(psi, a)?;
    let av = a.matrix().mul_slice(psi.as_slice());
    let e = inner_slice(psi.as_slice(), &av);
    if e.im.abs() > imag_tol {
        return Err(Error::Hermiticity {
            residual: e.im.abs(),
            location: None,
        });
    }
    let shifted: Vec<Complex64> = av
        .iter()
        .zip(psi.as_slice().iter())
        .map(|(v, p)| v - e.re * p)
        .collect();
    Ok((e.re, shifted))
}

/// Standard deviation `|(A - <A>) psi|`; zero exactly when `psi` is an
/// eigenvector of `A`.
pub fn uncertainty_of(psi: &StateVector, a: &Observable) -> Result<f64> {
    let (_, shifted) = shifted_image(psi, a, IMAG_EXPECTATION_TOL)?;
    Ok(norm_slice(&shifted))
}

/// Commutator expectation `<C> = -i(<psi, A B psi> - <psi, B A psi>)`
/// evaluated with matrix-vector products only, so large grids never pay
/// for a dense matrix product.
pub(crate) fn commutator_expectation(
    psi: &StateVector,
    a: &Observable,
    b: &Observable,
    imag_tol: f64,
) -> Result<f64> {
    check_dims(psi, a)?;
    check_dims(psi, b)?;
    let bv = b.matrix().mul_slice(psi.as_slice());
    let av = a.matrix().mul_slice(psi.as_slice());
    let abv = a.matrix().mul_slice(&bv);
    let bav = b.matrix().mul_slice(&av);
    let z1 = inner_slice(psi.as_slice(), &abv);
    let z2 = inner_slice(psi.as_slice(), &bav);
    let c = Complex64::new(0.0, -1.0) * (z1 - z2);
    if c.im.abs() > imag_tol {
        return Err(Error::Hermiticity {
            residual: c.im.abs(),
            location: None,
        });
    }
    Ok(c.re)
}

/// Full report `(a, b, c, dA, dB, product, bound, defect)` for a triple.
pub fn robertson_report(
    psi: &StateVector,
    a: &Observable,
    b: &Observable,
) -> Result<UncertaintyReport> {
    let (a_val, u) = shifted_image(psi, a, IMAG_EXPECTATION_TOL)?;
    let (b_val, v) = shifted_image(psi, b, IMAG_EXPECTATION_TOL)?;
    let c_val = commutator_expectation(psi, a, b, IMAG_EXPECTATION_TOL)?;
    let delta_a = norm_slice(&u);
    let delta_b = norm_slice(&v);
    let product = delta_a * delta_b;
    let bound = c_val.abs() / 2.0;
    Ok(UncertaintyReport {
        a: a_val,
        b: b_val,
        c: c_val,
        delta_a,
        delta_b,
        product,
        bound,
        defect: product - bound,
    })
}

/// Schwarz gap `|psi||phi| - |(psi, phi)|` and, at (near-)equality, the
/// proportionality witness `z` with `psi = z phi`.
pub fn schwarz_gap(psi: &ComplexVector, phi: &ComplexVector) -> Result<SchwarzWitness> {
    if psi.dim() != phi.dim() {
        return Err(Error::Dimension {
            expected: psi.dim(),
            found: phi.dim(),
        });
    }
    let phi_norm = phi.norm();
    if phi_norm == 0.0 {
        return Err(Error::Degenerate(
            "schwarz witness needs a nonzero phi".into(),
        ));
    }
    let psi_norm = psi.norm();
    let overlap = inner_slice(psi.as_slice(), phi.as_slice());
    let gap = psi_norm * phi_norm - overlap.norm();

    // Least-squares coefficient of psi on phi.
    let z = inner_slice(phi.as_slice(), psi.as_slice()) / (phi_norm * phi_norm);
    let mut residual_sq = 0.0;
    for (p, q) in psi.as_slice().iter().zip(phi.as_slice().iter()) {
        residual_sq += (p - z * q).norm_sqr();
    }
    let proportional = residual_sq.sqrt() <= PROPORTIONALITY_TOL * psi_norm;
    Ok(SchwarzWitness {
        gap,
        proportional,
        z: proportional.then_some(z),
    })
}
