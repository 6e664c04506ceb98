//! Independent cross-check of the MUS criterion: projected gradient
//! descent on the unit sphere for the smooth defect functional
//! `F(psi) = (dA dB)^2 - c^2/4`.
//!
//! `F` shares its zero set with the raw defect `dA dB - |c|/2` but
//! avoids the kink of `|c|` at `c = 0`, so gradients are well defined
//! everywhere. Minimizers are validated against the eigenvector
//! criterion through `check_mus`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{inner_slice, ComplexVector};
use crate::mus::{check_mus, MusVerdict};
use crate::observables::Observable;
use crate::rng::SplitMix64;
use crate::state::StateVector;
use crate::uncertainty::robertson_report;

/// Knobs for [`minimize_defect`].
#[derive(Debug, Clone)]
pub struct MinimizeOptions {
    pub max_iters: usize,
    /// Base step length; backtracking halves it when a trial increases `F`.
    pub step: f64,
    /// Stop when the tangent gradient norm falls below this.
    pub grad_tol: f64,
    /// Stop (and report convergence) when `F` falls below this.
    pub defect_tol: f64,
    /// Seed for the restart generator; every start derives from it
    /// through SplitMix64, so runs reproduce bit-for-bit.
    pub seed: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            max_iters: 10_000,
            step: 0.05,
            grad_tol: 1e-9,
            defect_tol: 1e-12,
            seed: 42,
        }
    }
}

impl MinimizeOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::InvalidInput("max_iters must be >= 1".into()));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidInput("step must be positive".into()));
        }
        if self.grad_tol < 0.0 || self.defect_tol < 0.0 {
            return Err(Error::InvalidInput("tolerances must be >= 0".into()));
        }
        Ok(())
    }
}

/// Outcome of one descent run. `converged` means the objective reached
/// `defect_tol`; a stalled run reports its best iterate with
/// `converged = false` instead of erroring.
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub state: StateVector,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub verdict: MusVerdict,
}

/// `F(psi) = (dA dB)^2 - c^2/4`; nonnegative up to rounding, zero
/// exactly on MUS.
pub fn defect_objective(psi: &StateVector, a: &Observable, b: &Observable) -> Result<f64> {
    let r = robertson_report(psi, a, b)?;
    Ok(r.product * r.product - r.c * r.c / 4.0)
}

/// Gradient of `F` with respect to the real and imaginary parts of the
/// amplitudes (packed as the complex vector `d/dRe + i d/dIm`),
/// projected onto the tangent space of the unit sphere at `psi`.
pub fn defect_gradient(
    psi: &StateVector,
    a: &Observable,
    b: &Observable,
) -> Result<ComplexVector> {
    let r = robertson_report(psi, a, b)?;
    let n = psi.dim();
    let s = psi.as_slice();

    let av = a.matrix().mul_slice(s);
    let bv = b.matrix().mul_slice(s);
    let aav = a.matrix().mul_slice(&av);
    let bbv = b.matrix().mul_slice(&bv);
    let abv = a.matrix().mul_slice(&bv);
    let bav = b.matrix().mul_slice(&av);

    let var_a = r.delta_a * r.delta_a;
    let var_b = r.delta_b * r.delta_b;
    let half_c = r.c / 2.0;

    // (A - a)^2 psi, (B - b)^2 psi and C psi assembled from products.
    let mut grad = Vec::with_capacity(n);
    for i in 0..n {
        let u2 = aav[i] - 2.0 * r.a * av[i] + r.a * r.a * s[i];
        let v2 = bbv[i] - 2.0 * r.b * bv[i] + r.b * r.b * s[i];
        let cv = Complex64::new(0.0, -1.0) * (abv[i] - bav[i]);
        // Rayleigh-quotient gradients of the three ingredients on the
        // sphere: d<M> = 2(M psi - <M> psi).
        let g = 2.0
            * (var_b * (u2 - var_a * s[i]) + var_a * (v2 - var_b * s[i])
                - half_c * (cv - r.c * s[i]));
        grad.push(g);
    }

    // Remove the radial component (it is already ~0 because F is
    // scale-invariant; the projection enforces it exactly).
    let radial = inner_slice(s, &grad).re;
    for i in 0..n {
        grad[i] -= radial * s[i];
    }
    ComplexVector::new(grad)
}

fn tangent_norm(g: &ComplexVector) -> f64 {
    g.norm()
}

/// Projected gradient descent with renormalization and halving
/// backtracking. Descent is monotone: a step is accepted only if it
/// does not increase `F`.
pub fn minimize_defect(
    a: &Observable,
    b: &Observable,
    psi0: &StateVector,
    opts: &MinimizeOptions,
) -> Result<MinimizeResult> {
    minimize_traced(a, b, psi0, opts, &mut |_| {})
}

fn minimize_traced(
    a: &Observable,
    b: &Observable,
    psi0: &StateVector,
    opts: &MinimizeOptions,
    on_accept: &mut dyn FnMut(f64),
) -> Result<MinimizeResult> {
    opts.validate()?;
    let mut psi = psi0.clone();
    let mut f = defect_objective(&psi, a, b)?;
    on_accept(f);
    let mut iterations = 0usize;

    // The accepted step length carries over and is allowed to grow;
    // minima of F can be quartic-flat, where any fixed step degrades to
    // O(1/k) convergence.
    let mut t_next = opts.step;
    while iterations < opts.max_iters {
        if f <= opts.defect_tol {
            break;
        }
        let g = defect_gradient(&psi, a, b)?;
        if tangent_norm(&g) <= opts.grad_tol {
            break;
        }
        let mut t = t_next;
        let mut accepted = false;
        for _ in 0..200 {
            let trial_raw = psi.vector().sub(&g.scaled(Complex64::new(t, 0.0)))?;
            let trial = StateVector::normalized(trial_raw)?;
            let ft = defect_objective(&trial, a, b)?;
            if ft <= f {
                psi = trial;
                f = ft;
                accepted = true;
                t_next = (t * 4.0).min(1e9);
                break;
            }
            t /= 2.0;
        }
        if !accepted {
            // Flat to machine precision in every tried step length.
            break;
        }
        iterations += 1;
        on_accept(f);
    }

    let converged = f <= opts.defect_tol;
    // The condition residual scales like sqrt(F), so the embedded
    // verdict uses sqrt(defect_tol) clamped to a sane window.
    let verdict_tol = opts.defect_tol.sqrt().clamp(1e-8, 1e-3);
    let verdict = check_mus(&psi, a, b, verdict_tol)?;
    Ok(MinimizeResult {
        state: psi,
        objective: f,
        iterations,
        converged,
        verdict,
    })
}

/// Runs `n_starts` descents from reproducible pseudo-random states; the
/// i-th start seed is the i-th draw of SplitMix64 seeded with
/// `opts.seed`. Results are ordered by start index.
pub fn minimize_defect_restarts(
    a: &Observable,
    b: &Observable,
    n_starts: usize,
    opts: &MinimizeOptions,
) -> Result<Vec<MinimizeResult>> {
    opts.validate()?;
    if n_starts == 0 {
        return Err(Error::InvalidInput("need at least one start".into()));
    }
    let mut seeder = SplitMix64::new(opts.seed);
    let mut out = Vec::with_capacity(n_starts);
    for _ in 0..n_starts {
        let psi0 = StateVector::random(a.dim(), seeder.next_u64())?;
        out.push(minimize_defect(a, b, &psi0, opts)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::spin_operators;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spin_half() -> (Observable, Observable) {
        let (jx, jy, _) = spin_operators(1).unwrap();
        (jx, jy)
    }

    /// Closed form for spin-1/2 (Jx, Jy): with Bloch vector n,
    /// F = nx^2 ny^2 / 16.
    fn bloch_objective(psi: &StateVector) -> f64 {
        let s = psi.as_slice();
        let nx = 2.0 * (s[0].conj() * s[1]).re;
        let ny = 2.0 * (s[0].conj() * s[1]).im;
        nx * nx * ny * ny / 16.0
    }

    #[test]
    fn objective_zero_at_spin_up() {
        let (jx, jy) = spin_half();
        let up = StateVector::basis(2, 0).unwrap();
        assert_eq!(defect_objective(&up, &jx, &jy).unwrap(), 0.0);
    }

    #[test]
    fn objective_zero_at_jx_eigenstate() {
        // (1,1)/sqrt(2) is an eigenstate of Jx and <Jz> = 0 there, so
        // both terms vanish.
        let (jx, jy) = spin_half();
        let s = 1.0 / 2.0_f64.sqrt();
        let plus = StateVector::from_amplitudes(vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        let f = defect_objective(&plus, &jx, &jy).unwrap();
        assert!(f.abs() < 1e-15, "{f}");
    }

    #[test]
    fn objective_matches_bloch_closed_form() {
        let (jx, jy) = spin_half();
        for seed in 0..20u64 {
            let psi = StateVector::random(2, seed).unwrap();
            let f = defect_objective(&psi, &jx, &jy).unwrap();
            let expected = bloch_objective(&psi);
            assert!((f - expected).abs() < 1e-13, "seed {seed}: {f} vs {expected}");
            assert!(f >= -1e-9);
        }
    }

    #[test]
    fn gradient_vanishes_at_mus() {
        let (jx, jy) = spin_half();
        let up = StateVector::basis(2, 0).unwrap();
        let g = defect_gradient(&up, &jx, &jy).unwrap();
        assert!(g.norm() <= 1e-6);
    }

    #[test]
    fn gradient_is_tangent() {
        let (jx, jy) = spin_half();
        for seed in 0..10u64 {
            let psi = StateVector::random(2, seed).unwrap();
            let g = defect_gradient(&psi, &jx, &jy).unwrap();
            let radial = inner_slice(psi.as_slice(), g.as_slice()).re;
            assert!(radial.abs() < 1e-10);
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        // Oracle: central differences of psi -> F(psi/|psi|) in every
        // real coordinate, h = 1e-5.
        let (jx, jy, _) = spin_operators(3).unwrap();
        let dim = 4;
        let h = 1e-5;
        for seed in 0..10u64 {
            let psi = StateVector::random(dim, seed).unwrap();
            let g = defect_gradient(&psi, &jx, &jy).unwrap();

            let eval = |amps: &[Complex64]| -> f64 {
                let v = ComplexVector::new(amps.to_vec()).unwrap();
                let s = StateVector::normalized(v).unwrap();
                defect_objective(&s, &jx, &jy).unwrap()
            };
            let base: Vec<Complex64> = psi.as_slice().to_vec();
            let mut fd = Vec::with_capacity(dim);
            for i in 0..dim {
                let mut plus = base.clone();
                let mut minus = base.clone();
                plus[i] += c(h, 0.0);
                minus[i] -= c(h, 0.0);
                let d_re = (eval(&plus) - eval(&minus)) / (2.0 * h);
                let mut plus = base.clone();
                let mut minus = base.clone();
                plus[i] += c(0.0, h);
                minus[i] -= c(0.0, h);
                let d_im = (eval(&plus) - eval(&minus)) / (2.0 * h);
                fd.push(c(d_re, d_im));
            }
            let mut diff_sq = 0.0;
            let mut fd_sq = 0.0;
            for i in 0..dim {
                diff_sq += (g[i] - fd[i]).norm_sqr();
                fd_sq += fd[i].norm_sqr();
            }
            let rel = diff_sq.sqrt() / fd_sq.sqrt().max(1e-12);
            assert!(rel <= 1e-5, "seed {seed}: relative mismatch {rel}");
        }
    }

    #[test]
    fn minimize_returns_immediately_at_optimum() {
        let (jx, jy) = spin_half();
        let up = StateVector::basis(2, 0).unwrap();
        let r = minimize_defect(&jx, &jy, &up, &MinimizeOptions::default()).unwrap();
        assert_eq!(r.iterations, 0);
        assert_eq!(r.objective, 0.0);
        assert!(r.converged);
        assert!(r.verdict.is_mus);
    }

    #[test]
    fn minimize_spin_one_from_random_starts() {
        let (jx, jy, _) = spin_operators(2).unwrap();
        let opts = MinimizeOptions::default();
        let results = minimize_defect_restarts(&jx, &jy, 5, &opts).unwrap();
        for (i, r) in results.iter().enumerate() {
            assert!(r.objective <= 1e-8, "start {i}: objective {}", r.objective);
            let v = check_mus(&r.state, &jx, &jy, 1e-4).unwrap();
            assert!(v.is_mus, "start {i} not a MUS");
        }
    }

    #[test]
    fn descent_is_monotone() {
        let (jx, jy, _) = spin_operators(2).unwrap();
        let psi0 = StateVector::random(3, 7).unwrap();
        let mut trace = Vec::new();
        let r = minimize_traced(
            &jx,
            &jy,
            &psi0,
            &MinimizeOptions::default(),
            &mut |f| trace.push(f),
        )
        .unwrap();
        assert!(trace.len() >= 2, "expected some accepted steps");
        for w in trace.windows(2) {
            assert!(w[1] <= w[0], "objective increased: {} -> {}", w[0], w[1]);
        }
        assert!((trace.last().unwrap() - r.objective).abs() == 0.0);
    }

    #[test]
    fn restarts_are_reproducible() {
        let (jx, jy) = spin_half();
        let opts = MinimizeOptions::default();
        let r1 = minimize_defect_restarts(&jx, &jy, 3, &opts).unwrap();
        let r2 = minimize_defect_restarts(&jx, &jy, 3, &opts).unwrap();
        for (a_run, b_run) in r1.iter().zip(r2.iter()) {
            assert_eq!(a_run.state, b_run.state);
            assert_eq!(a_run.objective, b_run.objective);
            assert_eq!(a_run.iterations, b_run.iterations);
        }
    }

    #[test]
    fn options_validation() {
        let mut opts = MinimizeOptions::default();
        opts.step = 0.0;
        assert!(opts.validate().is_err());
        let mut opts = MinimizeOptions::default();
        opts.max_iters = 0;
        assert!(opts.validate().is_err());
    }
}
