//! Alkali Rydberg structure: level energies from quantum defects, Wigner
//! algebra, dipole-dipole couplings, and two-atom molecular potentials.
//!
//! Units throughout: energies in MHz (angular frequencies quoted as
//! 2*pi*MHz), distances in micrometers, magnetic fields in Gauss, dipoles
//! in units of `e a0`.

pub mod basis;
pub mod curves;
pub mod defects;
pub mod dipole;
pub mod radial;
pub mod state;
pub mod wigner;

pub use basis::{build_pair_basis, BasisCutoffs, PairBasis};
pub use curves::{
    diagonalize_pair, resonance_scan, CurveCacheFile, CurveMeta, MolecularCurves,
    ResonanceHit, ResonanceThresholds,
};
pub use defects::{defect_energy, defect_table, single_atom_energy, zeeman_shift};
pub use dipole::{dipole_dipole_element, reduced_dipole};
pub use radial::{CoulombRadial, RadialProvider, TableRadial, UnitRadial};
pub use state::{PairState, RydbergState, Species};
pub use wigner::{wigner_symbol, WignerKind};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RydbergError {
    #[error("invalid quantum numbers n={n} l={l} 2j={dj} 2mj={dmj}")]
    BadQuantumNumbers { n: u32, l: u32, dj: i32, dmj: i32 },
    #[error("no quantum-defect datum for {species} channel l={l}, 2j={dj}")]
    MissingDefect { species: Species, l: u32, dj: i32 },
    #[error("no radial matrix element for {a} <-> {b}")]
    MissingRadial { a: String, b: String },
    #[error("{value} is not an integer or half-integer")]
    NotHalfInteger { value: f64 },
    #[error("magnetic quantum numbers incompatible with their momenta")]
    BadSymbolArguments,
    #[error("pair basis came out empty")]
    EmptyBasis,
    #[error("interatomic distance {r_um} um must be positive")]
    BadDistance { r_um: f64 },
    #[error("distance grid must be nonempty and strictly increasing")]
    BadGrid,
}
