//! Shared random generators for the integration suites.
#![allow(dead_code)] // each test target uses a different subset

use muskit::linalg::ComplexMatrix;
use muskit::observables::Observable;
use muskit::state::StateVector;
use muskit::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub fn random_complex_matrix<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::new(dim, data).unwrap()
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let m = random_complex_matrix(rng, dim);
    m.add(&m.adjoint())
        .unwrap()
        .scaled(Complex64::new(0.5, 0.0))
}

pub fn random_observable<R: Rng>(rng: &mut R, dim: usize, name: &str) -> Observable {
    Observable::new(name, random_hermitian(rng, dim)).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R, dim: usize) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let v = muskit::linalg::ComplexVector::new(amps).unwrap();
        if v.norm() > 1e-3 {
            return StateVector::normalized(v).unwrap();
        }
    }
}
