//! Cluster cumulants of chain Gibbs states.
//!
//! The cumulant of an m-site contiguous cluster is defined recursively:
//! the full cluster Gibbs state minus every tensor factorization into
//! smaller contiguous cumulants. Summing tensor products of cumulants over
//! all compositions of N reconstructs the N-site Gibbs state exactly, so
//! truncating the family by cluster size gives a controlled approximation.
//!
//! Everything is 1-D here: on a chain the cluster topology is fixed by its
//! size, so cumulants are keyed by (model, m, beta) alone and memoized.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use nalgebra::DMatrix;

use crate::lattice::{build_chain, Model};
use crate::linalg;
use crate::spectral::{
    gibbs_state, hermitian_eigen, DensityOperator, SpectralDecomposition, TraceTag,
};
use crate::{check_dense_cap, C64, Error, Result};

/// Ordered partition of a positive integer into positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// All 2^(N-1) ordered compositions of N, largest first part first, so the
/// trivial composition (N) leads and (1, 1, ..., 1) closes the list.
pub fn compositions(n: usize) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "compositions need a positive total".into(),
        ));
    }
    fn recurse(remaining: usize, stack: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition {
                parts: stack.clone(),
            });
            return;
        }
        for first in (1..=remaining).rev() {
            stack.push(first);
            recurse(remaining - first, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    recurse(n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Cluster cumulant: a traceless Hermitian operator on m contiguous sites
/// (trace one for m = 1, where it equals the single-site Gibbs state),
/// with its spectral decomposition and Schatten-1 norm cached.
#[derive(Debug)]
pub struct Cumulant {
    m: usize,
    model: Model,
    beta: f64,
    operator: DensityOperator,
    spectral: SpectralDecomposition,
    norm1: f64,
}

impl Cumulant {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn operator(&self) -> &DensityOperator {
        &self.operator
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        self.operator.matrix()
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spectral
    }

    /// Schatten-1 norm, frozen at construction.
    pub fn norm1(&self) -> f64 {
        self.norm1
    }

    /// Split into normalized mixed states `sigma_plus`, `sigma_minus` with
    /// `Delta = (norm1 / 2) (sigma_plus - sigma_minus)`, built from the
    /// positive and negated negative spectral parts. `None` when the
    /// cumulant vanishes (e.g. beta = 0) or for m = 1.
    pub fn split(&self) -> Option<(DensityOperator, DensityOperator, f64)> {
        if self.m == 1 || self.norm1 < 1e-14 {
            return None;
        }
        let dim = self.operator.dim();
        let mut plus = DMatrix::<C64>::zeros(dim, dim);
        let mut minus = DMatrix::<C64>::zeros(dim, dim);
        for (k, &gamma) in self.spectral.eigenvalues.iter().enumerate() {
            let v = self.spectral.eigenvectors.column(k);
            let proj = v * v.adjoint();
            if gamma >= 0.0 {
                plus += proj * C64::new(gamma, 0.0);
            } else {
                minus += proj * C64::new(-gamma, 0.0);
            }
        }
        let half = C64::new(self.norm1 / 2.0, 0.0);
        let plus = DensityOperator::new_state(plus / half, self.m).ok()?;
        let minus = DensityOperator::new_state(minus / half, self.m).ok()?;
        Some((plus, minus, self.norm1))
    }
}

type CacheKey = (Model, usize, u64);
static CACHE: LazyLock<Mutex<HashMap<CacheKey, Arc<Cumulant>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Gibbs state of an m-site cluster of a built-in model.
pub fn cluster_gibbs(model: Model, m: usize, beta: f64) -> Result<DensityOperator> {
    gibbs_state(&build_chain(model, m)?, beta)
}

/// The m-site cluster cumulant at inverse temperature `beta`, memoized per
/// (model, m, beta). Built recursively and, for m <= 4, cross-checked
/// against the alternating-sign expansion over compositions.
pub fn cumulant(model: Model, m: usize, beta: f64) -> Result<Arc<Cumulant>> {
    if m == 0 {
        return Err(Error::InvalidArgument("cumulant size must be >= 1".into()));
    }
    check_dense_cap(m)?;
    if beta < 0.0 {
        return Err(Error::NegativeBeta(beta));
    }
    let key = (model, m, beta.to_bits());
    if let Some(hit) = CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }

    let matrix = cumulant_matrix_recursive(model, m, beta)?;
    if m <= 4 {
        let alt = cumulant_matrix_alternating(model, m, beta)?;
        let dev = linalg::max_abs(&(&matrix - &alt));
        if dev > 1e-10 {
            return Err(Error::DataIntegrity(format!(
                "recursive and alternating cumulant constructions disagree by {dev:.3e} (m={m})"
            )));
        }
    }

    let tag = if m == 1 { TraceTag::Unit } else { TraceTag::Zero };
    let operator = DensityOperator::new(matrix, m, tag)?;
    let spectral = hermitian_eigen(operator.matrix())?;
    let norm1 = spectral.eigenvalues.iter().map(|e| e.abs()).sum();
    let built = Arc::new(Cumulant {
        m,
        model,
        beta,
        operator,
        spectral,
        norm1,
    });
    // concurrent insertions compute identical values, so last write wins
    CACHE.lock().unwrap().insert(key, built.clone());
    Ok(built)
}

fn cumulant_matrix_recursive(model: Model, m: usize, beta: f64) -> Result<DMatrix<C64>> {
    let mut out = cluster_gibbs(model, m, beta)?.matrix().clone();
    for comp in compositions(m)? {
        if comp.parts().len() < 2 {
            continue;
        }
        out -= composition_product(model, beta, comp.parts(), |mdl, sz, b| {
            Ok(cumulant(mdl, sz, b)?.matrix().clone())
        })?;
    }
    Ok(out)
}

fn cumulant_matrix_alternating(model: Model, m: usize, beta: f64) -> Result<DMatrix<C64>> {
    let dim = 1usize << m;
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    for comp in compositions(m)? {
        let sign = if comp.parts().len() % 2 == 1 { 1.0 } else { -1.0 };
        let prod = composition_product(model, beta, comp.parts(), |mdl, sz, b| {
            Ok(cluster_gibbs(mdl, sz, b)?.matrix().clone())
        })?;
        out += prod * C64::new(sign, 0.0);
    }
    Ok(out)
}

fn composition_product(
    model: Model,
    beta: f64,
    parts: &[usize],
    factor: impl Fn(Model, usize, f64) -> Result<DMatrix<C64>>,
) -> Result<DMatrix<C64>> {
    let mut out = DMatrix::<C64>::identity(1, 1);
    for &p in parts {
        out = out.kronecker(&factor(model, p, beta)?);
    }
    Ok(out)
}

/// Sum of cumulant tensor products over all compositions of N. Equals the
/// N-site Gibbs state; exposed so callers can exercise the telescoping
/// identity directly.
pub fn telescoped_state(model: Model, n: usize, beta: f64) -> Result<DMatrix<C64>> {
    check_dense_cap(n)?;
    let dim = 1usize << n;
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    for comp in compositions(n)? {
        out += composition_product(model, beta, comp.parts(), |mdl, sz, b| {
            Ok(cumulant(mdl, sz, b)?.matrix().clone())
        })?;
    }
    Ok(out)
}

/// Contiguous runs of a sorted site set under chain adjacency.
pub fn connected_components(sites: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &s in sites {
        match out.last_mut() {
            Some(run) if *run.last().unwrap() + 1 == s => run.push(s),
            _ => out.push(vec![s]),
        }
    }
    out
}

/// Inclusion-exclusion cluster weight `W(c) = P(c) - sum over proper
/// nonempty subclusters of W(s)`.
///
/// `values` must hold the property value for the cluster and every
/// nonempty subset of its sites (keyed by sorted site lists). When the
/// property is additive over disconnected parts, the weight of a
/// disconnected cluster vanishes.
pub fn lce_weight(values: &BTreeMap<Vec<usize>, f64>, cluster: &[usize]) -> Result<f64> {
    let sites = cluster.to_vec();
    if sites.is_empty() {
        return Err(Error::InvalidArgument("empty cluster".into()));
    }
    if !sites.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(
            "cluster sites must be sorted and distinct".into(),
        ));
    }
    let k = sites.len();
    if k > 12 {
        return Err(Error::InvalidArgument(format!(
            "cluster of {k} sites exceeds the subset-enumeration limit of 12"
        )));
    }

    let lookup = |mask: usize| -> Result<f64> {
        let subset: Vec<usize> = (0..k)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| sites[b])
            .collect();
        values.get(&subset).copied().ok_or_else(|| {
            Error::InvalidArgument(format!("missing property value for subcluster {subset:?}"))
        })
    };

    let full = (1usize << k) - 1;
    let mut weights = vec![0.0f64; full + 1];
    // increasing popcount so subsets are resolved before their supersets
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let mut w = lookup(mask)?;
        let mut sub = (mask - 1) & mask;
        while sub != 0 {
            w -= weights[sub];
            sub = (sub - 1) & mask;
        }
        weights[mask] = w;
    }
    Ok(weights[full])
}
