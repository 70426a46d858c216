//! Alkali level energies from embedded quantum-defect tables.
//!
//! Bare energies follow the Rydberg-Ritz form `E = -cR / (n - delta(n))^2`
//! with `delta(n) = delta0 + delta2 / (n - delta0)^2` per `(l, j)` channel.
//! Channels missing from the table are an error, never silently hydrogenic.
//! Energies are frequencies in MHz (quoted as 2*pi*MHz in formulas), magnetic
//! fields in Gauss.

use serde::Deserialize;
use std::collections::HashMap;
use std::sync::OnceLock;

use super::state::{RydbergState, Species};
use super::RydbergError;

/// Bohr magneton as used throughout: 1.4 MHz per Gauss.
pub const MU_B_MHZ_PER_GAUSS: f64 = 1.4;

const DEFECT_TABLE_JSON: &str = include_str!("data/quantum_defects.json");

#[derive(Debug, Deserialize)]
struct DefectFile {
    version: String,
    species: Vec<SpeciesEntry>,
}

#[derive(Debug, Deserialize)]
struct SpeciesEntry {
    name: String,
    rydberg_mhz: f64,
    channels: Vec<ChannelEntry>,
}

#[derive(Debug, Deserialize)]
struct ChannelEntry {
    l: u32,
    dj: i32,
    delta0: f64,
    delta2: f64,
}

#[derive(Debug)]
pub struct DefectTable {
    pub version: String,
    rydberg_mhz: HashMap<Species, f64>,
    channels: HashMap<(Species, u32, i32), (f64, f64)>,
}

fn species_by_name(name: &str) -> Option<Species> {
    match name {
        "Rb87" => Some(Species::Rb87),
        "Cs133" => Some(Species::Cs133),
        _ => None,
    }
}

/// The embedded table, parsed once.
pub fn defect_table() -> &'static DefectTable {
    static TABLE: OnceLock<DefectTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let file: DefectFile =
            serde_json::from_str(DEFECT_TABLE_JSON).expect("embedded defect table parses");
        let mut rydberg_mhz = HashMap::new();
        let mut channels = HashMap::new();
        for entry in file.species {
            let species = species_by_name(&entry.name).expect("known species in table");
            rydberg_mhz.insert(species, entry.rydberg_mhz);
            for ch in entry.channels {
                channels.insert((species, ch.l, ch.dj), (ch.delta0, ch.delta2));
            }
        }
        DefectTable {
            version: file.version,
            rydberg_mhz,
            channels,
        }
    })
}

impl DefectTable {
    pub fn rydberg_mhz(&self, species: Species) -> f64 {
        self.rydberg_mhz[&species]
    }

    pub fn quantum_defect(&self, state: &RydbergState) -> Result<f64, RydbergError> {
        let (delta0, delta2) = self
            .channels
            .get(&(state.species, state.l, state.dj))
            .ok_or(RydbergError::MissingDefect {
                species: state.species,
                l: state.l,
                dj: state.dj,
            })?;
        let n = f64::from(state.n);
        Ok(delta0 + delta2 / (n - delta0).powi(2))
    }

    /// Effective principal quantum number `n - delta(n)`.
    pub fn effective_n(&self, state: &RydbergState) -> Result<f64, RydbergError> {
        Ok(f64::from(state.n) - self.quantum_defect(state)?)
    }
}

/// Bare level energy in MHz, relative to the ionization threshold.
pub fn defect_energy(state: &RydbergState) -> Result<f64, RydbergError> {
    let table = defect_table();
    let nstar = table.effective_n(state)?;
    Ok(-table.rydberg_mhz(state.species) / (nstar * nstar))
}

/// Linear Zeeman shift `mu_B g_j B m_j` in MHz for a field in Gauss.
pub fn zeeman_shift(state: &RydbergState, b_gauss: f64) -> f64 {
    MU_B_MHZ_PER_GAUSS * state.lande_g() * b_gauss * state.mj()
}

/// Level energy including the Zeeman shift.
pub fn single_atom_energy(state: &RydbergState, b_gauss: f64) -> Result<f64, RydbergError> {
    Ok(defect_energy(state)? + zeeman_shift(state, b_gauss))
}
