//! Dense spectral kernel: eigendecompositions, Gibbs states, partition
//! functions, trace norms and expectation values.
//!
//! Everything here works by exact eigendecomposition, never by
//! matrix-exponential series, so results double as the brute-force oracle
//! for the cluster machinery. Tolerances in this module are contract
//! values: constructors reject inputs that violate them.

use nalgebra::{DMatrix, DVector};

use crate::lattice::Hamiltonian;
use crate::linalg;
use crate::{check_dense_cap, C64, Error, Result};

/// Hermiticity tolerance for operator constructors.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Trace tolerance for tagged operators.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalue floor for positive-semidefinite checks.
pub const PSD_FLOOR: f64 = -1e-10;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending and
/// eigenvector columns matching their order.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<C64>,
}

impl SpectralDecomposition {
    /// Rebuild `V diag(f(lambda)) V^dagger`.
    pub fn apply(&self, f: impl Fn(f64) -> C64) -> DMatrix<C64> {
        let d = DMatrix::from_diagonal(&self.eigenvalues.map(f));
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> DMatrix<C64> {
        self.apply(|x| C64::new(x, 0.0))
    }
}

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> Result<SpectralDecomposition> {
    let herm_dev = linalg::max_abs(&(m - m.adjoint()));
    if herm_dev > HERMITICITY_TOL {
        return Err(Error::DataIntegrity(format!(
            "matrix not Hermitian to {HERMITICITY_TOL:.0e} (deviation {herm_dev:.3e})"
        )));
    }
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        eigenvectors.set_column(new_col, &eig.eigenvectors.column(old_col));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Expected trace of a tagged operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceTag {
    /// States: trace 1, positive semidefinite.
    Unit,
    /// Cumulants: traceless.
    Zero,
    Other,
}

/// A dense Hermitian operator on an n-site chain with trace metadata.
/// Construction validates Hermiticity and the tagged trace. Proper states
/// go through [`DensityOperator::new_state`], which additionally enforces
/// positive semidefiniteness; assembled truncated expansions carry the
/// `Unit` tag without the PSD check, since their negative weight is the
/// quantity the sampling overhead measures.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: DMatrix<C64>,
    n_sites: usize,
    trace_tag: TraceTag,
}

impl DensityOperator {
    pub fn new(matrix: DMatrix<C64>, n_sites: usize, trace_tag: TraceTag) -> Result<Self> {
        check_dense_cap(n_sites)?;
        let dim = 1usize << n_sites;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: dim,
            });
        }
        let herm_dev = linalg::max_abs(&(&matrix - matrix.adjoint()));
        if herm_dev > HERMITICITY_TOL {
            return Err(Error::DataIntegrity(format!(
                "operator not Hermitian to {HERMITICITY_TOL:.0e} (deviation {herm_dev:.3e})"
            )));
        }
        let tr = matrix.trace();
        let expected = match trace_tag {
            TraceTag::Unit => Some(1.0),
            TraceTag::Zero => Some(0.0),
            TraceTag::Other => None,
        };
        if let Some(want) = expected {
            let dev = (tr - C64::new(want, 0.0)).norm();
            if dev > TRACE_TOL {
                return Err(Error::DataIntegrity(format!(
                    "trace {tr} deviates from tagged value {want} by {dev:.3e}"
                )));
            }
        }
        Ok(Self {
            matrix,
            n_sites,
            trace_tag,
        })
    }

    /// Unit-trace constructor for genuine states: also rejects operators
    /// with an eigenvalue below [`PSD_FLOOR`].
    pub fn new_state(matrix: DMatrix<C64>, n_sites: usize) -> Result<Self> {
        let op = Self::new(matrix, n_sites, TraceTag::Unit)?;
        let min = op.spectral()?.eigenvalues[0];
        if min < PSD_FLOOR {
            return Err(Error::DataIntegrity(format!(
                "state has eigenvalue {min:.3e} below floor {PSD_FLOOR:.0e}"
            )));
        }
        Ok(op)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn trace_tag(&self) -> TraceTag {
        self.trace_tag
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        hermitian_eigen(&self.matrix)
    }
}

/// Thermal state `exp(-beta H) / Z` computed in the eigenbasis of `H`.
/// Rejects `beta < 0` and chains over the dense cap.
pub fn gibbs_state(h: &Hamiltonian, beta: f64) -> Result<DensityOperator> {
    if beta < 0.0 {
        return Err(Error::NegativeBeta(beta));
    }
    let dense = h.to_dense()?;
    let spec = hermitian_eigen(&dense)?;
    // shift by the ground energy before exponentiating to avoid overflow
    let e0 = spec.eigenvalues[0];
    let weights: Vec<f64> = spec
        .eigenvalues
        .iter()
        .map(|&e| (-beta * (e - e0)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let rho = {
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            weights.len(),
            weights.iter().map(|&w| C64::new(w / z, 0.0)),
        ));
        &spec.eigenvectors * d * spec.eigenvectors.adjoint()
    };
    DensityOperator::new(rho, h.n_sites(), TraceTag::Unit)
}

/// Partition function `Z = sum_n exp(-beta E_n)`.
pub fn partition_function(h: &Hamiltonian, beta: f64) -> Result<f64> {
    if beta < 0.0 {
        return Err(Error::NegativeBeta(beta));
    }
    let spec = hermitian_eigen(&h.to_dense()?)?;
    Ok(spec.eigenvalues.iter().map(|&e| (-beta * e).exp()).sum())
}

/// Schatten-1 norm: sum of absolute eigenvalues of a Hermitian operator.
pub fn trace_norm(a: &DensityOperator) -> Result<f64> {
    Ok(a.spectral()?.eigenvalues.iter().map(|e| e.abs()).sum())
}

/// Schatten-1 norm of a raw Hermitian matrix.
pub fn trace_norm_matrix(m: &DMatrix<C64>) -> Result<f64> {
    Ok(hermitian_eigen(m)?.eigenvalues.iter().map(|e| e.abs()).sum())
}

/// `Tr[rho O]` as a complex number. Callers pairing Hermitian operators
/// should go through [`expectation_real`].
pub fn expectation(rho: &DensityOperator, o: &DMatrix<C64>) -> Result<C64> {
    trace_product(rho.matrix(), o)
}

/// `Tr[rho O]` for Hermitian `O`: the imaginary part must be below 1e-10
/// and is discarded.
pub fn expectation_real(rho: &DensityOperator, o: &DMatrix<C64>) -> Result<f64> {
    let v = expectation(rho, o)?;
    if v.im.abs() > 1e-10 {
        return Err(Error::DataIntegrity(format!(
            "expectation of a supposedly Hermitian operator has imaginary part {:.3e}",
            v.im
        )));
    }
    Ok(v.re)
}

/// `Tr[A B]` without forming the product matrix.
pub fn trace_product(a: &DMatrix<C64>, b: &DMatrix<C64>) -> Result<C64> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_chain, zz_op, Model};

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        for n in 1..=3 {
            let h = build_chain(Model::Xy, n).unwrap();
            let rho = gibbs_state(&h, 0.0).unwrap();
            let dim = rho.dim();
            let target = DMatrix::<C64>::identity(dim, dim) / C64::new(dim as f64, 0.0);
            assert!(linalg::max_abs(&(rho.matrix() - target)) < 1e-14);
        }
    }

    #[test]
    fn dimer_eigenweights_match_closed_form() {
        let h = build_chain(Model::Xy, 2).unwrap();
        for beta in [0.0f64, 0.4, 0.8, 1.6] {
            let z = 2.0 * (1.0 + (2.0 * beta).cosh());
            let rho = gibbs_state(&h, beta).unwrap();
            let spec = rho.spectral().unwrap();
            let mut weights: Vec<f64> = spec.eigenvalues.iter().cloned().collect();
            weights.sort_by(f64::total_cmp);
            let mut expected = vec![
                (2.0 * beta).exp() / z,
                1.0 / z,
                1.0 / z,
                (-2.0 * beta).exp() / z,
            ];
            expected.sort_by(f64::total_cmp);
            for (w, e) in weights.iter().zip(expected) {
                assert!((w - e).abs() < 1e-12, "beta={beta}: {weights:?}");
            }
        }
    }

    #[test]
    fn single_site_gibbs_is_half_identity() {
        let h = build_chain(Model::Xy, 1).unwrap();
        let rho = gibbs_state(&h, 1.3).unwrap();
        let target = DMatrix::<C64>::identity(2, 2) * C64::new(0.5, 0.0);
        assert!(linalg::max_abs(&(rho.matrix() - target)) < 1e-14);
    }

    #[test]
    fn dimer_partition_function_closed_form() {
        let h = build_chain(Model::Xy, 2).unwrap();
        for beta in [0.2, 0.8, 1.6] {
            let z = partition_function(&h, beta).unwrap();
            let expected = 2.0 + (2.0 * beta).exp() + (-2.0 * beta).exp();
            assert!((z - expected).abs() < 1e-10, "beta={beta}: {z} vs {expected}");
        }
        assert!((partition_function(&h, 0.0).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_beta() {
        let h = build_chain(Model::Xy, 2).unwrap();
        assert!(matches!(gibbs_state(&h, -0.1), Err(Error::NegativeBeta(_))));
    }

    #[test]
    fn gibbs_commutes_with_hamiltonian() {
        let h = build_chain(Model::Xy, 3).unwrap();
        let rho = gibbs_state(&h, 0.8).unwrap();
        let hd = h.to_dense().unwrap();
        let comm = rho.matrix() * &hd - &hd * rho.matrix();
        assert!(linalg::frobenius(&comm) < 1e-10);
    }

    #[test]
    fn trace_norm_of_state_is_one() {
        let h = build_chain(Model::Heisenberg, 3).unwrap();
        let rho = gibbs_state(&h, 0.7).unwrap();
        assert!((trace_norm(&rho).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dimer_cumulant_norm_from_eigenweights() {
        // || rho_2 - I/4 ||_1 = sum_n |p_n - 1/4|
        let beta = 0.8;
        let h = build_chain(Model::Xy, 2).unwrap();
        let rho = gibbs_state(&h, beta).unwrap();
        let delta = rho.matrix() - DMatrix::<C64>::identity(4, 4) * C64::new(0.25, 0.0);
        let norm = trace_norm_matrix(&delta).unwrap();
        let z = 2.0 * (1.0 + (2.0 * beta).cosh());
        let expected = ((2.0 * beta).exp() / z - 0.25).abs()
            + 2.0 * (1.0 / z - 0.25).abs()
            + ((-2.0 * beta).exp() / z - 0.25).abs();
        assert!((norm - expected).abs() < 1e-12);
    }

    #[test]
    fn energy_derivative_matches_variance() {
        // d<H>/dbeta = -(<H^2> - <H>^2), central differences
        let h = build_chain(Model::Xy, 3).unwrap();
        let hd = h.to_dense().unwrap();
        let h2 = &hd * &hd;
        for beta in [0.2, 0.8] {
            let db = 1e-5;
            let e_plus = expectation_real(&gibbs_state(&h, beta + db).unwrap(), &hd).unwrap();
            let e_minus = expectation_real(&gibbs_state(&h, beta - db).unwrap(), &hd).unwrap();
            let deriv = (e_plus - e_minus) / (2.0 * db);
            let rho = gibbs_state(&h, beta).unwrap();
            let var = expectation_real(&rho, &h2).unwrap()
                - expectation_real(&rho, &hd).unwrap().powi(2);
            let rel = (deriv + var).abs() / var.abs();
            assert!(rel < 1e-4, "beta={beta}: deriv={deriv}, var={var}");
        }
    }

    #[test]
    fn expectation_identities() {
        let h = build_chain(Model::Xy, 2).unwrap();
        let rho = gibbs_state(&h, 0.0).unwrap();
        let zz = zz_op(2, 0, 1).unwrap();
        assert!(expectation_real(&rho, &zz).unwrap().abs() < 1e-12);
        let id = DMatrix::<C64>::identity(4, 4);
        assert!((expectation_real(&rho, &id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_dimension_mismatch() {
        let h = build_chain(Model::Xy, 2).unwrap();
        let rho = gibbs_state(&h, 0.1).unwrap();
        let wrong = DMatrix::<C64>::identity(8, 8);
        assert!(matches!(
            expectation(&rho, &wrong),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn unit_tag_rejects_negative_operator() {
        // diag(1.5, -0.5) has trace 1 but is not PSD
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.5, 0.0),
            C64::new(-0.5, 0.0),
        ]));
        assert!(matches!(
            DensityOperator::new(m, 1, TraceTag::Unit),
            Err(Error::DataIntegrity(_))
        ));
    }

    #[test]
    fn spectral_reconstruction_round_trip() {
        let h = build_chain(Model::Heisenberg, 3).unwrap();
        let d = h.to_dense().unwrap();
        let spec = hermitian_eigen(&d).unwrap();
        assert!(linalg::frobenius(&(spec.reconstruct() - &d)) < 1e-10);
        let vtv = spec.eigenvectors.adjoint() * &spec.eigenvectors;
        let dim = vtv.nrows();
        assert!(linalg::frobenius(&(vtv - DMatrix::identity(dim, dim))) < 1e-10);
        // ascending
        for w in spec.eigenvalues.as_slice().windows(2) {
            assert!(w[0] <= w[1]);
        }
    }
}
