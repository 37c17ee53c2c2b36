//! 1-D nearest-neighbor spin-chain Hamiltonians and their dense forms.
//!
//! Chains are open (bonds between sites i and i+1 only), couplings are
//! fixed to 1, and site indices are 0-based. In tensor products, site 0 is
//! the leftmost Kronecker factor, so the computational basis index of a
//! bitstring is `sum_i bit_i << (n - 1 - i)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{check_dense_cap, C64, Error, Result};

/// Single-site Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Dense 2x2 matrix of this Pauli operator.
    pub fn matrix(self) -> DMatrix<C64> {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Axis::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
            Axis::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
            Axis::Z => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        }
    }
}

/// A weighted Pauli string: a coefficient times a product of single-site
/// Pauli operators on strictly increasing sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub ops: Vec<(usize, Axis)>,
    pub coefficient: f64,
}

impl PauliString {
    pub fn new(ops: Vec<(usize, Axis)>, coefficient: f64) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidArgument(
                "Pauli string needs at least one non-identity site".into(),
            ));
        }
        if !ops.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidArgument(
                "Pauli string sites must be strictly increasing".into(),
            ));
        }
        Ok(Self { ops, coefficient })
    }

    /// Largest site index touched by the string.
    pub fn max_site(&self) -> usize {
        self.ops.last().map(|&(s, _)| s).unwrap_or(0)
    }

    /// Dense 2^n x 2^n matrix of the string on an n-site chain.
    pub fn to_dense(&self, n_sites: usize) -> DMatrix<C64> {
        let dim = 1usize << n_sites;
        let mut out = DMatrix::identity(1, 1);
        let mut k = 0;
        for site in 0..n_sites {
            let factor = if k < self.ops.len() && self.ops[k].0 == site {
                let m = self.ops[k].1.matrix();
                k += 1;
                m
            } else {
                DMatrix::identity(2, 2)
            };
            out = out.kronecker(&factor);
        }
        debug_assert_eq!(out.nrows(), dim);
        out * C64::new(self.coefficient, 0.0)
    }
}

/// Built-in chain models. `Custom` tags hand-assembled Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Xy,
    Heisenberg,
    Custom,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::Xy => write!(f, "xy"),
            Model::Heisenberg => write!(f, "heisenberg"),
            Model::Custom => write!(f, "custom"),
        }
    }
}

/// A spin-chain Hamiltonian: a sum of Pauli strings on `n_sites` sites.
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian {
    n_sites: usize,
    terms: Vec<PauliString>,
    model: Model,
}

/// Open-boundary chain with n-1 bonds. An XY bond is
/// `X_i X_{i+1} + Y_i Y_{i+1}`; a Heisenberg bond adds `Z_i Z_{i+1}`.
/// A single site has no bonds, so `n = 1` yields the zero Hamiltonian.
pub fn build_chain(model: Model, n: usize) -> Result<Hamiltonian> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain needs at least one site".into()));
    }
    if model == Model::Custom {
        return Err(Error::InvalidArgument(
            "custom model has no built-in bond pattern".into(),
        ));
    }
    let mut terms = Vec::new();
    for i in 0..n.saturating_sub(1) {
        terms.push(PauliString::new(vec![(i, Axis::X), (i + 1, Axis::X)], 1.0)?);
        terms.push(PauliString::new(vec![(i, Axis::Y), (i + 1, Axis::Y)], 1.0)?);
        if model == Model::Heisenberg {
            terms.push(PauliString::new(vec![(i, Axis::Z), (i + 1, Axis::Z)], 1.0)?);
        }
    }
    Ok(Hamiltonian {
        n_sites: n,
        terms,
        model,
    })
}

impl Hamiltonian {
    /// Assemble a Hamiltonian from explicit terms (tagged `Custom` unless
    /// stated otherwise). Terms must fit inside the chain.
    pub fn from_terms(n_sites: usize, terms: Vec<PauliString>, model: Model) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidArgument("chain needs at least one site".into()));
        }
        for t in &terms {
            if t.max_site() >= n_sites {
                return Err(Error::InvalidArgument(format!(
                    "term touches site {} outside chain of {} sites",
                    t.max_site(),
                    n_sites
                )));
            }
        }
        Ok(Self {
            n_sites,
            terms,
            model,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Dense Hermitian 2^n x 2^n matrix, by Kronecker expansion of the terms.
    pub fn to_dense(&self) -> Result<DMatrix<C64>> {
        check_dense_cap(self.n_sites)?;
        let dim = 1usize << self.n_sites;
        let mut out = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            out += t.to_dense(self.n_sites);
        }
        Ok(out)
    }

    /// Restriction to the window `[start, start + len)`: keeps exactly the
    /// bonds fully inside the window, with site indices re-based to 0.
    /// For the built-in models this equals `build_chain(model, len)`.
    pub fn subchain(&self, start: usize, len: usize) -> Result<Hamiltonian> {
        if len == 0 || start + len > self.n_sites {
            return Err(Error::InvalidArgument(format!(
                "window [{start}, {}) outside chain of {} sites",
                start + len,
                self.n_sites
            )));
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| t.ops.iter().all(|&(s, _)| s >= start && s < start + len))
            .map(|t| PauliString {
                ops: t.ops.iter().map(|&(s, a)| (s - start, a)).collect(),
                coefficient: t.coefficient,
            })
            .collect();
        Ok(Hamiltonian {
            n_sites: len,
            terms,
            model: self.model,
        })
    }

    /// Operator norm bound from coefficients: sum of |coefficient| over
    /// terms (each Pauli string has unit operator norm).
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }
}

/// Dense matrix of `Z` on one site of an n-site chain.
pub fn z_op(n_sites: usize, site: usize) -> Result<DMatrix<C64>> {
    if site >= n_sites {
        return Err(Error::InvalidArgument(format!(
            "site {site} outside chain of {n_sites} sites"
        )));
    }
    Ok(PauliString::new(vec![(site, Axis::Z)], 1.0)?.to_dense(n_sites))
}

/// Dense matrix of `Z_i Z_j` (i != j) on an n-site chain.
pub fn zz_op(n_sites: usize, i: usize, j: usize) -> Result<DMatrix<C64>> {
    if i == j {
        return Err(Error::InvalidArgument("zz_op needs distinct sites".into()));
    }
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    if b >= n_sites {
        return Err(Error::InvalidArgument(format!(
            "site {b} outside chain of {n_sites} sites"
        )));
    }
    Ok(PauliString::new(vec![(a, Axis::Z), (b, Axis::Z)], 1.0)?.to_dense(n_sites))
}
