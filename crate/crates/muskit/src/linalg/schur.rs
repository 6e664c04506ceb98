//! Complex Schur decomposition `M = Q T Q^H` via Householder reduction to
//! upper Hessenberg form followed by explicit single-shift QR iteration
//! with Wilkinson shifts.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

/// `t` is upper triangular, `q` unitary, and `M = q t q^H`.
pub struct Schur {
    pub t: ComplexMatrix,
    pub q: ComplexMatrix,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Unitary rotation `[[c, s], [-conj(s), c]]` (c real) mapping `(x, y)`
/// to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let scale = ax + ay;
    let d = scale * ((ax / scale).powi(2) + (ay / scale).powi(2)).sqrt();
    let c = ax / d;
    let s = (x / ax) * y.conj() / d;
    (c, s)
}

/// Rows `k`, `k+1` of `m` are replaced by the rotated pair over columns
/// `j0..j1`.
fn rotate_rows(m: &mut ComplexMatrix, k: usize, c: f64, s: Complex64, j0: usize, j1: usize) {
    for j in j0..j1 {
        let a = m[(k, j)];
        let b = m[(k + 1, j)];
        m[(k, j)] = c * a + s * b;
        m[(k + 1, j)] = -s.conj() * a + c * b;
    }
}

/// Columns `k`, `k+1` of `m` are replaced by the pair multiplied on the
/// right by the adjoint rotation, over rows `i0..i1`.
fn rotate_cols(m: &mut ComplexMatrix, k: usize, c: f64, s: Complex64, i0: usize, i1: usize) {
    for i in i0..i1 {
        let a = m[(i, k)];
        let b = m[(i, k + 1)];
        m[(i, k)] = c * a + s.conj() * b;
        m[(i, k + 1)] = -s * a + c * b;
    }
}

/// Reduces `h` to upper Hessenberg form in place, accumulating the
/// unitary similarity into `q` (so the original matrix equals
/// `q h q^H`).
fn hessenberg(h: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = h.dim();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        // Householder vector for column k below the diagonal.
        let mut col_norm_sq = 0.0;
        for i in k + 1..n {
            col_norm_sq += h[(i, k)].norm_sqr();
        }
        let col_norm = col_norm_sq.sqrt();
        if col_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * col_norm;
        let m = n - k - 1; // reflector length
        v[0] = x0 - alpha;
        for i in 1..m {
            v[i] = h[(k + 1 + i, k)];
        }
        let vnorm_sq: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sq;

        // Left: rows k+1..n, columns k..n.
        for j in k..n {
            let mut acc = ZERO;
            for i in 0..m {
                acc += v[i].conj() * h[(k + 1 + i, j)];
            }
            acc *= tau;
            for i in 0..m {
                let upd = acc * v[i];
                h[(k + 1 + i, j)] -= upd;
            }
        }
        // Right: columns k+1..n, all rows.
        for i in 0..n {
            let mut acc = ZERO;
            for j in 0..m {
                acc += h[(i, k + 1 + j)] * v[j];
            }
            acc *= tau;
            for j in 0..m {
                let upd = acc * v[j].conj();
                h[(i, k + 1 + j)] -= upd;
            }
        }
        // Accumulate Q on the right by the same reflector.
        for i in 0..n {
            let mut acc = ZERO;
            for j in 0..m {
                acc += q[(i, k + 1 + j)] * v[j];
            }
            acc *= tau;
            for j in 0..m {
                let upd = acc * v[j].conj();
                q[(i, k + 1 + j)] -= upd;
            }
        }
        // The reflector maps the column exactly onto alpha e1.
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

/// Eigenvalue of the trailing 2x2 block closest to the corner entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let mid = (a + d) * 0.5;
    let p = (a - d) * 0.5;
    let disc = (p * p + b * c).sqrt();
    let e1 = mid + disc;
    let e2 = mid - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// One explicit shifted QR step on the window `lo..=hi`, accumulated
/// into `q`.
fn qr_step(h: &mut ComplexMatrix, q: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    let n = h.dim();
    for i in lo..=hi {
        let d = h[(i, i)] - shift;
        h[(i, i)] = d;
    }
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        rotate_rows(h, k, c, s, k, n);
        h[(k + 1, k)] = ZERO;
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        rotate_cols(h, k, c, s, 0, k + 2);
        rotate_cols(q, k, c, s, 0, n);
    }
    for i in lo..=hi {
        let d = h[(i, i)] + shift;
        h[(i, i)] = d;
    }
}

/// Computes the Schur decomposition. Fails with
/// [`Error::Convergence`] carrying the smallest unresolved subdiagonal
/// magnitude if the iteration stalls.
pub fn schur(m: &ComplexMatrix) -> Result<Schur> {
    let n = m.dim();
    let mut h = m.clone();
    let mut q = ComplexMatrix::identity(n);
    hessenberg(&mut h, &mut q);

    if n >= 2 {
        let eps = f64::EPSILON;
        let anorm = h.norm_inf();
        let max_total = 60 * n.max(10);
        let mut total_iter = 0usize;
        let mut window_iter = 0usize;
        let mut hi = n - 1;
        loop {
            // Deflate from the bottom of the active window.
            let mut lo = hi;
            while lo > 0 {
                let mut tst = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
                if tst == 0.0 {
                    tst = anorm;
                }
                if h[(lo, lo - 1)].norm() <= eps * tst {
                    h[(lo, lo - 1)] = ZERO;
                    break;
                }
                lo -= 1;
            }
            if lo == hi {
                // 1x1 block converged.
                if hi == 0 {
                    break;
                }
                hi -= 1;
                window_iter = 0;
                continue;
            }
            total_iter += 1;
            window_iter += 1;
            if total_iter > max_total {
                let best = (lo + 1..=hi)
                    .map(|i| h[(i, i - 1)].norm())
                    .fold(f64::INFINITY, f64::min);
                return Err(Error::Convergence {
                    best_residual: best,
                });
            }
            let shift = if window_iter % 12 == 0 {
                // Exceptional shift to break symmetry-induced cycling.
                h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
            } else {
                wilkinson_shift(&h, hi)
            };
            qr_step(&mut h, &mut q, lo, hi, shift);
        }
    }

    Ok(Schur { t: h, q })
}
