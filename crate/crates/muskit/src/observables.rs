//! Standard observables: spin components from ladder operators, and
//! position/momentum discretized on a finite 1-D grid.

use alloc::string::String;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// A labelled Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    name: String,
    matrix: ComplexMatrix,
}

impl Observable {
    /// Validates Hermiticity before wrapping.
    pub fn new(name: impl Into<String>, matrix: ComplexMatrix) -> Result<Self> {
        matrix.require_hermitian()?;
        Ok(Self {
            name: name.into(),
            matrix,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Same observable rescaled by a real factor.
    pub fn scaled(&self, s: f64, name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            matrix: self.matrix.scaled(Complex64::new(s, 0.0)),
        }
    }
}

/// Uniform 1-D grid with `n` nodes spanning `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n: usize,
    x_min: f64,
    x_max: f64,
}

impl Grid1D {
    pub fn new(n: usize, x_min: f64, x_max: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(alloc::format!(
                "grid needs n >= 3, got {n}"
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::InvalidInput(
                "grid endpoints must be finite with x_min < x_max".into(),
            ));
        }
        Ok(Self { n, x_min, x_max })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Node spacing `(x_max - x_min) / (n - 1)`.
    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.h()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Grid over the same interval with the spacing halved
    /// (`n -> 2n - 1`), for convergence studies.
    pub fn refined(&self) -> Self {
        Self {
            n: 2 * self.n - 1,
            x_min: self.x_min,
            x_max: self.x_max,
        }
    }
}

/// Boundary treatment for the finite-difference momentum operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Out-of-range neighbors are dropped.
    Dirichlet,
    /// Indices wrap around.
    Periodic,
}

/// Multiplication by the node coordinate: a real diagonal matrix.
pub fn position_operator(grid: &Grid1D) -> Observable {
    let n = grid.n();
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(grid.point(i), 0.0);
    }
    Observable::new("x", m).expect("real diagonal is Hermitian")
}

/// `-i d/dx` via the second-order central difference
/// `(psi_{i+1} - psi_{i-1}) / (2h)`. The antisymmetric real stencil
/// times `-i` is Hermitian by construction.
pub fn momentum_operator(grid: &Grid1D, boundary: Boundary) -> Observable {
    let n = grid.n();
    let w = Complex64::new(0.0, -1.0 / (2.0 * grid.h()));
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        if i + 1 < n {
            m[(i, i + 1)] = w;
        }
        if i > 0 {
            m[(i, i - 1)] = -w;
        }
    }
    if boundary == Boundary::Periodic {
        m[(0, n - 1)] = -w;
        m[(n - 1, 0)] = w;
    }
    Observable::new("p", m).expect("central-difference stencil is Hermitian")
}

/// Spin components for `j = two_j / 2` built from ladder operators on
/// the basis `|j, m>` ordered by descending `m = j, j-1, ..., -j`.
/// Returns `(Jx, Jy, Jz)`.
pub fn spin_operators(two_j: u32) -> Result<(Observable, Observable, Observable)> {
    if two_j < 1 {
        return Err(Error::InvalidInput("spin needs two_j >= 1".into()));
    }
    let dim = (two_j + 1) as usize;
    let j = two_j as f64 / 2.0;

    // m value at basis index i.
    let m_of = |i: usize| j - i as f64;

    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>, so (J+)[i-1, i] acts on
    // index i (with m = m_of(i)).
    let mut plus = ComplexMatrix::zeros(dim);
    for i in 1..dim {
        let m = m_of(i);
        let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        plus[(i - 1, i)] = Complex64::new(amp, 0.0);
    }
    let minus = plus.adjoint();

    let jx = plus.add(&minus)?.scaled(Complex64::new(0.5, 0.0));
    let jy = plus.sub(&minus)?.scaled(Complex64::new(0.0, -0.5));
    let mut jz = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        jz[(i, i)] = Complex64::new(m_of(i), 0.0);
    }

    Ok((
        Observable::new("Jx", jx)?,
        Observable::new("Jy", jy)?,
        Observable::new("Jz", jz)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator_c, inner};
    use crate::state::StateVector;
    use crate::uncertainty::expectation;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn position_is_diagonal_grid_points() {
        let g = Grid1D::new(3, -1.0, 1.0).unwrap();
        let x = position_operator(&g);
        let m = x.matrix();
        assert_eq!(m[(0, 0)], c(-1.0, 0.0));
        assert_eq!(m[(1, 1)], c(0.0, 0.0));
        assert_eq!(m[(2, 2)], c(1.0, 0.0));
        assert_eq!(m[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn position_expectation_in_delta_state() {
        let g = Grid1D::new(11, 0.0, 5.0).unwrap();
        let x = position_operator(&g);
        for j in [0usize, 4, 10] {
            let psi = StateVector::basis(11, j).unwrap();
            let a = expectation(&psi, &x).unwrap();
            assert!((a - g.point(j)).abs() < 1e-14);
        }
    }

    #[test]
    fn momentum_stencil_n3_dirichlet() {
        let g = Grid1D::new(3, 0.0, 2.0).unwrap();
        let p = momentum_operator(&g, Boundary::Dirichlet);
        let w = c(0.0, -1.0 / (2.0 * g.h()));
        let m = p.matrix();
        assert_eq!(m[(0, 1)], w);
        assert_eq!(m[(1, 0)], -w);
        assert_eq!(m[(1, 2)], w);
        assert_eq!(m[(2, 1)], -w);
        assert_eq!(m[(0, 0)], c(0.0, 0.0));
        assert_eq!(m[(0, 2)], c(0.0, 0.0));
    }

    #[test]
    fn momentum_is_hermitian_both_boundaries() {
        let g = Grid1D::new(17, -2.0, 3.0).unwrap();
        for b in [Boundary::Dirichlet, Boundary::Periodic] {
            let p = momentum_operator(&g, b);
            assert_eq!(p.matrix().hermiticity_residual().0, 0.0);
        }
    }

    #[test]
    fn periodic_plane_wave_momentum_matches_discrete_symbol() {
        // Plane wave e^{ikx} with k chosen wrap-consistent is an exact
        // eigenvector of the periodic stencil with eigenvalue sin(kh)/h.
        let n = 64;
        let g = Grid1D::new(n, 0.0, (n - 1) as f64, ).unwrap();
        let h = g.h();
        let length = n as f64 * h; // periodic cell length
        for m_mode in [1usize, 3, 7] {
            let k = 2.0 * core::f64::consts::PI * m_mode as f64 / length;
            let amps: Vec<Complex64> = g
                .points()
                .map(|x| Complex64::new(0.0, k * x).exp())
                .collect();
            let psi = StateVector::normalized(crate::linalg::ComplexVector::new(amps).unwrap())
                .unwrap();
            let p = momentum_operator(&g, Boundary::Periodic);
            let b = expectation(&psi, &p).unwrap();
            let expected = (k * h).sin() / h;
            assert!((b - expected).abs() < 1e-12, "mode {m_mode}: {b} vs {expected}");
            // Second-order accuracy: symbol approaches k.
            assert!((expected - k).abs() < k.powi(3) * h * h / 6.0 + 1e-12);
        }
    }

    #[test]
    fn spin_half_matches_pauli_over_two() {
        let (jx, jy, jz) = spin_operators(1).unwrap();
        let half = 0.5;
        assert!((jx.matrix()[(0, 1)] - c(half, 0.0)).norm() < 1e-15);
        assert!((jx.matrix()[(1, 0)] - c(half, 0.0)).norm() < 1e-15);
        assert!((jy.matrix()[(0, 1)] - c(0.0, -half)).norm() < 1e-15);
        assert!((jy.matrix()[(1, 0)] - c(0.0, half)).norm() < 1e-15);
        assert!((jz.matrix()[(0, 0)] - c(half, 0.0)).norm() < 1e-15);
        assert!((jz.matrix()[(1, 1)] - c(-half, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jz_diagonal_descends_from_j_to_minus_j() {
        for two_j in [1u32, 2, 3, 5] {
            let (_, _, jz) = spin_operators(two_j).unwrap();
            let j = two_j as f64 / 2.0;
            let dim = (two_j + 1) as usize;
            for i in 0..dim {
                assert!((jz.matrix()[(i, i)].re - (j - i as f64)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn spin_commutator_closes() {
        for two_j in [1u32, 2, 4] {
            let (jx, jy, jz) = spin_operators(two_j).unwrap();
            let c_m = commutator_c(jx.matrix(), jy.matrix()).unwrap();
            let diff = c_m.sub(jz.matrix()).unwrap().norm_max();
            assert!(diff < 1e-12, "two_j={two_j}: {diff}");
        }
    }

    #[test]
    fn casimir_in_every_basis_state() {
        for two_j in [1u32, 2, 3] {
            let (jx, jy, jz) = spin_operators(two_j).unwrap();
            let j = two_j as f64 / 2.0;
            let dim = (two_j + 1) as usize;
            for i in 0..dim {
                let psi = StateVector::basis(dim, i).unwrap();
                let mut total = 0.0;
                for op in [&jx, &jy, &jz] {
                    let v = op.matrix().mul_vec(psi.vector()).unwrap();
                    total += inner(&v, &v).unwrap().re;
                }
                assert!((total - j * (j + 1.0)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(2, 0.0, 1.0).is_err());
        assert!(Grid1D::new(5, 1.0, 1.0).is_err());
        assert!(Grid1D::new(5, 2.0, 1.0).is_err());
        let g = Grid1D::new(5, 0.0, 1.0).unwrap();
        assert!((g.h() - 0.25).abs() < 1e-15);
        let r = g.refined();
        assert_eq!(r.n(), 9);
        assert!((r.h() - g.h() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn commutator_of_grid_pair_approaches_identity_on_interior_states() {
        // C = -i[X, P] equals the averaging stencil; on smooth states
        // supported away from the boundary, (C - I) psi = O(h^2).
        let err_for = |n: usize| {
            let g = Grid1D::new(n, -8.0, 8.0).unwrap();
            let x = position_operator(&g);
            let p = momentum_operator(&g, Boundary::Periodic);
            let c_m = commutator_c(x.matrix(), p.matrix()).unwrap();
            let amps: Vec<Complex64> = g
                .points()
                .map(|t| Complex64::new((-t * t / 2.0).exp(), 0.0))
                .collect();
            let psi = StateVector::normalized(crate::linalg::ComplexVector::new(amps).unwrap())
                .unwrap();
            let cv = c_m.mul_vec(psi.vector()).unwrap();
            cv.sub(psi.vector()).unwrap().norm()
        };
        let coarse = err_for(101);
        let fine = err_for(201);
        assert!(coarse > 1e-8, "coarse error unexpectedly tiny: {coarse}");
        assert!(
            fine < coarse / 1.9,
            "halving h should cut the error: {coarse} -> {fine}"
        );
    }
}
