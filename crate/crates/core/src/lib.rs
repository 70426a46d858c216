//! Simulation workbench for a parity-encoded quantum annealer built from
//! Rydberg-dressed atoms.
//!
//! The crate is organized along the processing chain:
//!
//! - [`lhz`]: compile an all-to-all Ising problem into the odd-parity LHZ
//!   lattice layout, plus decoding and brute-force oracles.
//! - [`plaquette`]: exact classical spectrum of the single-plaquette
//!   constraint Hamiltonian and its validity window.
//! - [`anneal`]: time-dependent state-vector evolution of the encoded
//!   Hamiltonian, instantaneous spectra, and seeded ensembles.
//! - [`rydberg`]: alkali Rydberg level structure, dipole-dipole coupled
//!   pair potentials, and molecular curve analysis.
//! - [`dressing`]: laser-dressed ground-state interactions, decoherence
//!   rates, figures of merit, and the plaquette parameters they realize.

pub mod anneal;
pub mod dressing;
pub mod lhz;
pub mod plaquette;
pub mod rydberg;

pub use lhz::{LhzEncoding, LogicalProblem, SpinConfiguration};
pub use plaquette::{PlaquetteConfig, PlaquetteParams};
