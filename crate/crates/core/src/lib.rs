//! Cluster-expansion approximations of 1-D spin-chain Gibbs states.
//!
//! The crate builds thermal states of nearest-neighbor chains, expands them
//! into truncated series of local Gibbs factors and traceless
//! "Gibbs-cumulant" operators, and evaluates observables three ways:
//!
//! - exactly, through a dense spectral kernel ([`spectral`]);
//! - deterministically, by summing the truncated series term by term
//!   ([`expansion`], [`observables`]);
//! - stochastically, by quasi-distribution Monte Carlo whose estimator is
//!   unbiased against the truncated series at the cost of a variance factor
//!   lambda squared ([`sampler`]).
//!
//! A gate-level statevector engine with Givens-rotation synthesis
//! ([`circuits`]) provides eigenstate preparation and exact time evolution
//! for the XY chain, which feeds dynamical ZZ correlation functions, the
//! dynamical structure factor, and specific-heat curves ([`observables`]).
//!
//! Dense work is capped at [`DENSE_CAP`] sites (4096-dimensional matrices).
//! Site indices are 0-based everywhere, including file output.

pub mod circuits;
pub mod cumulants;
mod error;
pub mod expansion;
pub mod lattice;
mod linalg;
pub mod observables;
pub mod sampler;
pub mod spectral;
pub mod validation;

pub use error::{Error, Result};

/// Largest chain size handled by the dense kernels (2^12 = 4096 dims).
pub const DENSE_CAP: usize = 12;

/// Complex double-precision scalar used by all dense kernels.
pub type C64 = num_complex::Complex64;

pub(crate) fn check_dense_cap(n_sites: usize) -> Result<()> {
    if n_sites > DENSE_CAP {
        Err(Error::DenseCapExceeded {
            n_sites,
            cap: DENSE_CAP,
        })
    } else {
        Ok(())
    }
}
