//! Minimum-uncertainty-state (MUS) analysis.
//!
//! A normalized state saturates `dA dB >= |c|/2` exactly when
//! `(A - a) psi = i lambda (B - b) psi` for a real `lambda` with
//! `|lambda| = dA/dB` and sign opposite to `c`. Equivalently, `psi` is
//! an eigenvector of `K = A - i lambda B` with eigenvalue `a - i lambda b`.
//! This module decides membership, recovers `lambda` from a state,
//! synthesizes MUS families from the eigenvectors of `K`, and reproduces
//! the Gaussian wave-packet benchmark on a finite grid.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{
    general_eigenpairs, hermitian_eigenpairs, inner_slice, norm_slice, ComplexMatrix,
};
use crate::observables::{momentum_operator, position_operator, Boundary, Grid1D, Observable};
use crate::state::StateVector;
use crate::uncertainty::{
    expectation, robertson_report, shifted_image, UncertaintyReport, IMAG_EXPECTATION_TOL,
};

/// Default tolerance for the degeneracy tests in [`lambda_of_state`].
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Candidates whose states overlap at least this much count as
/// duplicates during synthesis.
const CANDIDATE_DUPLICATE_OVERLAP: f64 = 1.0 - 1e-8;

/// Why a verdict came out the way it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MusReason {
    Ok,
    NonzeroDefect,
    DeltaBZero,
    ResidualExceedsTol,
}

/// Decision record for one MUS membership test.
#[derive(Debug, Clone)]
pub struct MusVerdict {
    pub is_mus: bool,
    /// The recovered multiplier; absent when undefined (vanishing dB or
    /// ambiguous sign).
    pub lambda: Option<f64>,
    /// `|(A - a) psi - i lambda (B - b) psi|` at the recovered lambda;
    /// zero when lambda is absent.
    pub condition_residual: f64,
    /// `dA dB - |w|` with `w = ((A-a) psi, (B-b) psi)`.
    pub gap1: f64,
    /// `|w| - |Im w|`.
    pub gap2: f64,
    pub report: UncertaintyReport,
    pub reason: MusReason,
}

/// One synthesized MUS: an eigenvector of `K = A - i lambda B`.
#[derive(Debug, Clone)]
pub struct MusCandidate {
    pub state: StateVector,
    /// Eigenvalue of `K`; bookkeeping gives `a = Re mu` and, for
    /// `lambda != 0`, `b = -Im mu / lambda`.
    pub mu: Complex64,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    /// `|K v - mu v|` from the eigensolver.
    pub eigen_residual: f64,
    pub verdict: MusVerdict,
}

/// Synthesis results for one value of lambda. A failed solve keeps its
/// slot with an explanatory note instead of disappearing.
#[derive(Debug, Clone)]
pub struct LambdaGroup {
    pub lambda: f64,
    pub candidates: Vec<MusCandidate>,
    pub note: Option<String>,
}

/// MUS candidates across a lambda grid, in grid order.
#[derive(Debug, Clone)]
pub struct MusFamily {
    pub groups: Vec<LambdaGroup>,
}

impl MusFamily {
    pub fn lambdas(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.lambda).collect()
    }

    pub fn candidates(&self) -> impl Iterator<Item = &MusCandidate> {
        self.groups.iter().flat_map(|g| g.candidates.iter())
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|g| g.candidates.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_pair_dims(a: &Observable, b: &Observable) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: a.dim(),
            found: b.dim(),
        })
    }
}

/// `|(A - a) psi - i lambda (B - b) psi|` with `a`, `b` taken from
/// expectation values.
pub fn condition_residual(
    psi: &StateVector,
    a: &Observable,
    b: &Observable,
    lambda: f64,
) -> Result<f64> {
    check_pair_dims(a, b)?;
    let (_, u) = shifted_image(psi, a, IMAG_EXPECTATION_TOL)?;
    let (_, v) = shifted_image(psi, b, IMAG_EXPECTATION_TOL)?;
    let i_lambda = Complex64::new(0.0, lambda);
    let mut s = 0.0;
    for (ui, vi) in u.iter().zip(v.iter()) {
        s += (ui - i_lambda * vi).norm_sqr();
    }
    Ok(s.sqrt())
}

/// Recovers lambda from a state: `|lambda| = dA/dB`, sign opposite to
/// `c`. Returns 0 when `dA <= tol`; errors when `dB <= tol`
/// (degenerate) or when `c` vanishes while `dA` does not (the sign rule
/// is undefined there).
pub fn lambda_of_state_with_tol(
    psi: &StateVector,
    a: &Observable,
    b: &Observable,
    tol: f64,
) -> Result<f64> {
    check_pair_dims(a, b)?;
    let report = robertson_report(psi, a, b)?;
    lambda_from_report(&report, tol)
}

pub(crate) fn lambda_from_report(report: &UncertaintyReport, tol: f64) -> Result<f64> {
    if report.delta_b <= tol {
        return Err(Error::Degenerate(
            "dB vanishes; lambda is undefined for the trivial case".into(),
        ));
    }
    if report.delta_a <= tol {
        return Ok(0.0);
    }
    if report.c.abs() <= tol {
        return Err(Error::SignAmbiguous {
            delta_a: report.delta_a,
            c: report.c,
        });
    }
    Ok(-report.c.signum() * report.delta_a / report.delta_b)
}

/// [`lambda_of_state_with_tol`] at the default degeneracy tolerance.
pub fn lambda_of_state(psi: &StateVector, a: &Observable, b: &Observable) -> Result<f64> {
    lambda_of_state_with_tol(psi, a, b, DEGENERACY_TOL)
}

/// The two slacks in the proof chain
/// `dA dB >= |w| >= |Im w| = |c|/2` with `w = ((A-a) psi, (B-b) psi)`;
/// both vanish exactly on a MUS.
pub fn inequality_chain(psi: &StateVector, a: &Observable, b: &Observable) -> Result<(f64, f64)> {
    check_pair_dims(a, b)?;
    let (_, u) = shifted_image(psi, a, IMAG_EXPECTATION_TOL)?;
    let (_, v) = shifted_image(psi, b, IMAG_EXPECTATION_TOL)?;
    let w = inner_slice(&u, &v);
    let gap1 = norm_slice(&u) * norm_slice(&v) - w.norm();
    let gap2 = w.norm() - w.im.abs();
    Ok((gap1, gap2))
}

/// Decides MUS membership. Degeneracies are reported through
/// [`MusVerdict::reason`] rather than as errors. The residual test is
/// scale-aware: it compares against `tol * (1 + |A| + |lambda| |B|)`
/// in the row-sum norm, so rescaling the observables rescales the
/// criterion with them.
pub fn check_mus(
    psi: &StateVector,
    a: &Observable,
    b: &Observable,
    tol: f64,
) -> Result<MusVerdict> {
    check_pair_dims(a, b)?;
    let report = robertson_report(psi, a, b)?;
    let (gap1, gap2) = inequality_chain(psi, a, b)?;

    if report.delta_b <= tol {
        return Ok(MusVerdict {
            is_mus: false,
            lambda: None,
            condition_residual: 0.0,
            gap1,
            gap2,
            report,
            reason: MusReason::DeltaBZero,
        });
    }

    let lambda = match lambda_from_report(&report, tol) {
        Ok(l) => l,
        Err(Error::SignAmbiguous { .. }) => {
            // c = 0 with dA, dB > 0: the bound is 0 but the product is
            // not, so no MUS; the sign rule never applies.
            return Ok(MusVerdict {
                is_mus: false,
                lambda: None,
                condition_residual: 0.0,
                gap1,
                gap2,
                report,
                reason: MusReason::NonzeroDefect,
            });
        }
        Err(e) => return Err(e),
    };

    let residual = condition_residual(psi, a, b, lambda)?;
    let scale = 1.0 + a.matrix().norm_inf() + lambda.abs() * b.matrix().norm_inf();
    let residual_ok = residual <= tol * scale;
    let defect_ok = report.defect <= tol * (1.0 + report.bound);
    let is_mus = residual_ok && defect_ok;
    let reason = if is_mus {
        MusReason::Ok
    } else if !residual_ok {
        MusReason::ResidualExceedsTol
    } else {
        MusReason::NonzeroDefect
    };
    Ok(MusVerdict {
        is_mus,
        lambda: Some(lambda),
        condition_residual: residual,
        gap1,
        gap2,
        report,
        reason,
    })
}

/// The synthesis operator `K = A - i lambda B`.
pub fn build_k_operator(a: &Observable, b: &Observable, lambda: f64) -> Result<ComplexMatrix> {
    check_pair_dims(a, b)?;
    if !lambda.is_finite() {
        return Err(Error::InvalidInput("lambda must be finite".into()));
    }
    a.matrix()
        .sub(&b.matrix().scaled(Complex64::new(0.0, lambda)))
}

/// MUS candidates at a fixed lambda: the residual-verified eigenvectors
/// of `K = A - i lambda B`, each re-checked through [`check_mus`]. Only
/// verified MUS are returned; a defective `K` yields fewer than `dim`
/// candidates. `lambda = 0` degenerates to the Hermitian eigenvectors
/// of `A` (then `b` comes from the expectation value instead of `mu`).
pub fn find_mus_at_lambda(
    a: &Observable,
    b: &Observable,
    lambda: f64,
    tol: f64,
) -> Result<Vec<MusCandidate>> {
    check_pair_dims(a, b)?;
    let mut out: Vec<MusCandidate> = Vec::new();

    let (pairs, scale) = if lambda == 0.0 {
        (
            hermitian_eigenpairs(a.matrix())?,
            1.0 + a.matrix().norm_inf(),
        )
    } else {
        let k = build_k_operator(a, b, lambda)?;
        let scale = 1.0 + k.norm_inf();
        (general_eigenpairs(&k)?, scale)
    };

    for pair in pairs {
        if pair.residual > tol * scale {
            continue;
        }
        let state = StateVector::new(pair.vector.clone())?;
        let verdict = check_mus(&state, a, b, tol)?;
        if !verdict.is_mus {
            continue;
        }
        let b_val = if lambda != 0.0 {
            -pair.value.im / lambda
        } else {
            expectation(&state, b)?
        };
        let dup = out.iter().any(|c| {
            inner_slice(c.state.as_slice(), state.as_slice()).norm() >= CANDIDATE_DUPLICATE_OVERLAP
        });
        if dup {
            continue;
        }
        out.push(MusCandidate {
            state,
            mu: pair.value,
            lambda,
            a: pair.value.re,
            b: b_val,
            eigen_residual: pair.residual,
            verdict,
        });
    }
    Ok(out)
}

/// Runs [`find_mus_at_lambda`] across a grid. The grid must be nonempty
/// with every lambda nonzero; a lambda whose solve errors is kept as an
/// empty group carrying the error text.
pub fn sweep_lambda(
    a: &Observable,
    b: &Observable,
    grid: &[f64],
    tol: f64,
) -> Result<MusFamily> {
    if grid.is_empty() {
        return Err(Error::Degenerate("sweep grid must be nonempty".into()));
    }
    if grid.iter().any(|l| *l == 0.0) {
        return Err(Error::InvalidInput("lambda must be nonzero".into()));
    }
    let groups = grid
        .iter()
        .map(|&lambda| match find_mus_at_lambda(a, b, lambda, tol) {
            Ok(candidates) => LambdaGroup {
                lambda,
                candidates,
                note: None,
            },
            Err(e) => LambdaGroup {
                lambda,
                candidates: Vec::new(),
                note: Some(alloc::format!("{e}")),
            },
        })
        .collect();
    Ok(MusFamily { groups })
}

/// Samples `exp(i k x - (x - x0)^2 / (4 sigma^2))` on the grid and
/// normalizes in the discrete norm. The grid must resolve the packet
/// (`h <= sigma/4`) and contain `[x0 - 8 sigma, x0 + 8 sigma]`.
pub fn gaussian_packet(grid: &Grid1D, x0: f64, k: f64, sigma: f64) -> Result<StateVector> {
    if !(sigma > 0.0 && sigma.is_finite()) || !x0.is_finite() || !k.is_finite() {
        return Err(Error::InvalidInput(
            "gaussian packet needs finite x0, k and sigma > 0".into(),
        ));
    }
    let h = grid.h();
    if h > sigma / 4.0 {
        return Err(Error::Resolution(alloc::format!(
            "grid spacing {h:.3e} exceeds sigma/4 = {:.3e}",
            sigma / 4.0
        )));
    }
    if grid.x_min() > x0 - 8.0 * sigma || grid.x_max() < x0 + 8.0 * sigma {
        return Err(Error::Resolution(alloc::format!(
            "grid [{}, {}] does not contain [x0 - 8 sigma, x0 + 8 sigma] = [{}, {}]",
            grid.x_min(),
            grid.x_max(),
            x0 - 8.0 * sigma,
            x0 + 8.0 * sigma
        )));
    }
    let amps: Vec<Complex64> = grid
        .points()
        .map(|x| {
            let envelope = (-(x - x0) * (x - x0) / (4.0 * sigma * sigma)).exp();
            Complex64::new(0.0, k * x).exp() * envelope
        })
        .collect();
    StateVector::normalized(crate::linalg::ComplexVector::new(amps)?)
}

/// Everything [`verify_gaussian`] measures about the discretized packet.
#[derive(Debug, Clone)]
pub struct GaussianVerification {
    pub verdict: MusVerdict,
    /// Closed-form multiplier `-2 sigma^2` the verdict's lambda should
    /// approach as the grid refines.
    pub lambda_expected: f64,
    /// Closed-form eigenvalue `x0 + 2 i sigma^2 k` of `x + 2 sigma^2 d/dx`.
    pub eigenvalue: Complex64,
    /// Relative residual `|(X + 2 sigma^2 D) psi - eigenvalue psi| / |eigenvalue|`
    /// with `D = iP` the bare difference operator.
    pub eigen_residual: f64,
}

/// Builds the packet plus grid operators, checks MUS membership, and
/// measures the first-order eigen-relation satisfied by the continuum
/// packet. `tol` is the membership tolerance; with a second-order
/// stencil the discretization error is `O(h^2)`, so 1e-3 is appropriate
/// for the documented benchmark grids.
pub fn verify_gaussian(
    grid: &Grid1D,
    x0: f64,
    k: f64,
    sigma: f64,
    boundary: Boundary,
    tol: f64,
) -> Result<GaussianVerification> {
    let psi = gaussian_packet(grid, x0, k, sigma)?;
    let x = position_operator(grid);
    let p = momentum_operator(grid, boundary);
    let verdict = check_mus(&psi, &x, &p, tol)?;

    let two_sigma_sq = 2.0 * sigma * sigma;
    let eigenvalue = Complex64::new(x0, two_sigma_sq * k);
    let xv = x.matrix().mul_slice(psi.as_slice());
    let pv = p.matrix().mul_slice(psi.as_slice());
    // D = iP, so X + 2 sigma^2 D applied to psi is xv + 2 sigma^2 i pv.
    let factor = Complex64::new(0.0, two_sigma_sq);
    let mut s = 0.0;
    for ((xi, pi), ai) in xv.iter().zip(pv.iter()).zip(psi.as_slice().iter()) {
        s += (xi + factor * pi - eigenvalue * ai).norm_sqr();
    }
    let eigen_residual = s.sqrt() / eigenvalue.norm();

    Ok(GaussianVerification {
        verdict,
        lambda_expected: -two_sigma_sq,
        eigenvalue,
        eigen_residual,
    })
}
