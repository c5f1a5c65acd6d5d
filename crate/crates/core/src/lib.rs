//! Gaussian process states (GPS) for quantum many-body problems.
//!
//! This crate models ground states of lattice spin systems, Hubbard models and
//! small molecular Hamiltonians with Gaussian process states: wavefunctions whose
//! log amplitudes are weighted sums of kernel evaluations against support
//! configurations (classical GPS), or fully parametrized CP decompositions of the
//! log-amplitude tensor (qGPS). Models are learned either by sparse Bayesian
//! regression on wavefunction data (relevance vector machine), by variational
//! Monte Carlo with stochastic reconfiguration, or by Bayesian alternating
//! least-squares sweeping. Everything is validated against exact diagonalization
//! on small sectors.

pub mod bayes;
pub mod bootstrap;
pub mod classify;
pub mod config;
pub mod error;
pub mod exact;
pub mod hamiltonian;
pub mod kernel;
pub mod qgps;
pub mod sweep;
pub mod vmc;

pub use config::{BasisConfig, Boundary, Lattice, SectorSpec, SymmetryGroup, SymmetryOp};
pub use error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
