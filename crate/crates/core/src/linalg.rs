//! Small dense linear-algebra helpers: a cyclic Jacobi eigensolver for real
//! symmetric matrices and norm utilities.
//!
//! The Jacobi solver is deliberately hand-rolled: its rotation angles feed
//! the Givens-gate synthesis in [`crate::circuits`], and it doubles as an
//! implementation independent of the nalgebra eigensolver used by
//! [`crate::spectral`].

use nalgebra::DMatrix;

use crate::C64;

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
///
/// Sweeps pivots (p, q) in row-major order, left to right, until every
/// off-diagonal magnitude drops below `tol`. Returns eigenvalues sorted
/// ascending with the matching eigenvector columns, so that
/// `a * vec_k = val_k * vec_k`.
pub fn jacobi_eigen(a: &DMatrix<f64>, tol: f64) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "jacobi_eigen needs a square matrix");
    let mut m = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);

    let max_sweeps = 100;
    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].abs());
            }
        }
        if off < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() < tol {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = 0.5 * (aqq - app) / apq;
                // smaller-magnitude root for stability
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let vals: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vecs = DMatrix::<f64>::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        vecs.set_column(new_col, &v.column(old_col));
    }
    (vals, vecs)
}

/// Frobenius norm of a complex matrix.
pub fn frobenius(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise magnitude.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// True when the matrix is entrywise real to `tol`.
pub fn is_real(m: &DMatrix<C64>, tol: f64) -> bool {
    m.iter().all(|c| c.im.abs() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_diagonalizes_tridiagonal() {
        // single-excitation block of the 4-site XY chain
        let n = 4;
        let mut a = DMatrix::<f64>::zeros(n, n);
        for i in 0..n - 1 {
            a[(i, i + 1)] = 2.0;
            a[(i + 1, i)] = 2.0;
        }
        let (vals, vecs) = jacobi_eigen(&a, 1e-14);
        // golden-ratio spectrum of the open chain
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let expected = [-2.0 * phi, -2.0 * (phi - 1.0), 2.0 * (phi - 1.0), 2.0 * phi];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-10, "vals {vals:?}");
        }
        for k in 0..n {
            let residual = &a * vecs.column(k) - vecs.column(k) * vals[k];
            assert!(residual.amax() < 1e-10);
        }
        let orth = vecs.transpose() * &vecs - DMatrix::identity(n, n);
        assert!(orth.amax() < 1e-12);
    }

    #[test]
    fn jacobi_handles_trivial_sizes() {
        let a = DMatrix::from_row_slice(1, 1, &[3.5]);
        let (vals, _) = jacobi_eigen(&a, 1e-14);
        assert_eq!(vals, vec![3.5]);
    }
}
