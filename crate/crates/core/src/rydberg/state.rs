//! Single-atom Rydberg state labels.
//!
//! Angular momenta are half-integers stored as doubled integers, so all
//! quantum-number arithmetic stays exact.

use serde::{Deserialize, Serialize};
use std::fmt;

use super::RydbergError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Species {
    Rb87,
    Cs133,
}

impl Species {
    pub fn name(&self) -> &'static str {
        match self {
            Species::Rb87 => "Rb87",
            Species::Cs133 => "Cs133",
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// |n (l s) j m_j> with s = 1/2; `dj` and `dmj` are doubled values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RydbergState {
    pub species: Species,
    pub n: u32,
    pub l: u32,
    /// 2j; j must be l +- 1/2.
    pub dj: i32,
    /// 2m_j.
    pub dmj: i32,
}

impl RydbergState {
    pub fn new(species: Species, n: u32, l: u32, dj: i32, dmj: i32) -> Result<Self, RydbergError> {
        let state = Self {
            species,
            n,
            l,
            dj,
            dmj,
        };
        state.validate()?;
        Ok(state)
    }

    fn validate(&self) -> Result<(), RydbergError> {
        let l2 = 2 * self.l as i32;
        let valid_j = self.dj == l2 + 1 || (l2 > 0 && self.dj == l2 - 1);
        if !valid_j || self.dmj.abs() > self.dj || (self.dj - self.dmj) % 2 != 0 {
            return Err(RydbergError::BadQuantumNumbers {
                n: self.n,
                l: self.l,
                dj: self.dj,
                dmj: self.dmj,
            });
        }
        if self.n <= self.l {
            return Err(RydbergError::BadQuantumNumbers {
                n: self.n,
                l: self.l,
                dj: self.dj,
                dmj: self.dmj,
            });
        }
        Ok(())
    }

    pub fn j(&self) -> f64 {
        f64::from(self.dj) / 2.0
    }

    pub fn mj(&self) -> f64 {
        f64::from(self.dmj) / 2.0
    }

    /// Same level, ignoring the Zeeman sublevel.
    pub fn same_level(&self, other: &Self) -> bool {
        self.species == other.species
            && self.n == other.n
            && self.l == other.l
            && self.dj == other.dj
    }

    /// Fine-structure Lande factor with g_s = 2.
    pub fn lande_g(&self) -> f64 {
        let j = self.j();
        let l = f64::from(self.l);
        let s = 0.5;
        1.0 + (j * (j + 1.0) + s * (s + 1.0) - l * (l + 1.0)) / (2.0 * j * (j + 1.0))
    }
}

const L_LETTERS: [&str; 6] = ["S", "P", "D", "F", "G", "H"];

impl fmt::Display for RydbergState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = L_LETTERS
            .get(self.l as usize)
            .copied()
            .unwrap_or("X");
        write!(
            f,
            "{}:{}{}{}/2(mj={}/2)",
            self.species, self.n, l, self.dj, self.dmj
        )
    }
}

/// An ordered pair of single-atom states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairState {
    pub first: RydbergState,
    pub second: RydbergState,
}

impl PairState {
    pub fn new(first: RydbergState, second: RydbergState) -> Self {
        Self { first, second }
    }

    /// Total magnetic quantum number, doubled.
    pub fn dm_total(&self) -> i32 {
        self.first.dmj + self.second.dmj
    }
}

impl fmt::Display for PairState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}, {}>", self.first, self.second)
    }
}
