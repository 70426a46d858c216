//! Pair-state basis construction around a laser-targeted pair.
//!
//! The basis holds every pair state inside an energy window around the
//! target (same total-M parity class, since the in-plane dipole-dipole
//! coupling changes M only by 0 or +-2), restricted by principal-quantum-
//! number and angular-momentum cutoffs. Optionally the first shell of
//! dipole-coupled pairs just outside the window is appended.

use serde::{Deserialize, Serialize};

use super::defects::{defect_table, single_atom_energy};
use super::state::{PairState, RydbergState, Species};
use super::RydbergError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisCutoffs {
    /// Half-width of the pair-energy window around the target, MHz.
    pub energy_window_mhz: f64,
    /// Highest |n - n_target| per atom.
    pub max_delta_n: u32,
    /// Highest orbital angular momentum per atom.
    pub max_l: u32,
    /// Also keep out-of-window pairs one dipole hop from an in-window pair.
    pub include_first_shell: bool,
}

impl BasisCutoffs {
    pub fn validate(&self) -> Result<(), RydbergError> {
        if self.energy_window_mhz < 0.0 {
            return Err(RydbergError::EmptyBasis);
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PairBasis {
    pub states: Vec<PairState>,
    /// Pair energies including Zeeman shifts, relative to the target pair, MHz.
    pub energies: Vec<f64>,
    pub target: PairState,
    pub target_index: usize,
    pub cutoffs: BasisCutoffs,
    pub b_gauss: f64,
}

impl PairBasis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// All single-atom candidate states for one slot.
fn slot_candidates(
    species: Species,
    n_center: u32,
    cutoffs: &BasisCutoffs,
) -> Vec<RydbergState> {
    let mut out = Vec::new();
    let n_lo = n_center.saturating_sub(cutoffs.max_delta_n).max(1);
    let n_hi = n_center + cutoffs.max_delta_n;
    for n in n_lo..=n_hi {
        for l in 0..=cutoffs.max_l.min(n - 1) {
            let l2 = 2 * l as i32;
            for dj in [l2 - 1, l2 + 1] {
                if dj < 1 {
                    continue;
                }
                for dmj in (-dj..=dj).step_by(2) {
                    if let Ok(state) = RydbergState::new(species, n, l, dj, dmj) {
                        // Only channels present in the defect table qualify.
                        if defect_table().quantum_defect(&state).is_ok() {
                            out.push(state);
                        }
                    }
                }
            }
        }
    }
    out
}

fn dipole_connected(a: &PairState, b: &PairState) -> bool {
    a.first.l.abs_diff(b.first.l) == 1
        && a.second.l.abs_diff(b.second.l) == 1
        && (a.dm_total() - b.dm_total()).abs() <= 4
        && (a.dm_total() - b.dm_total()) % 4 == 0
}

/// Build the basis around `target`. The target pair is always included.
pub fn build_pair_basis(
    target: PairState,
    cutoffs: &BasisCutoffs,
    b_gauss: f64,
) -> Result<PairBasis, RydbergError> {
    cutoffs.validate()?;
    let e_target = single_atom_energy(&target.first, b_gauss)?
        + single_atom_energy(&target.second, b_gauss)?;

    let first_slot = slot_candidates(target.first.species, target.first.n, cutoffs);
    let second_slot = slot_candidates(target.second.species, target.second.n, cutoffs);

    let mut in_window: Vec<(PairState, f64)> = Vec::new();
    let mut outside: Vec<(PairState, f64)> = Vec::new();
    for a in &first_slot {
        let e_a = single_atom_energy(a, b_gauss)?;
        for b in &second_slot {
            let pair = PairState::new(*a, *b);
            // The in-plane coupling changes total M by 0 or +-2 only; pairs in
            // the other M-parity class never mix with the target.
            if (pair.dm_total() - target.dm_total()) % 4 != 0 {
                continue;
            }
            let e = e_a + single_atom_energy(b, b_gauss)? - e_target;
            if e.abs() <= cutoffs.energy_window_mhz
                || pair == target
            {
                in_window.push((pair, e));
            } else {
                outside.push((pair, e));
            }
        }
    }

    let mut kept = in_window;
    if cutoffs.include_first_shell {
        for (pair, e) in outside {
            if kept
                .iter()
                .any(|(inside, _)| dipole_connected(inside, &pair))
            {
                kept.push((pair, e));
            }
        }
    }

    // Deterministic order: energy, then quantum numbers.
    kept.sort_by(|x, y| {
        x.1.total_cmp(&y.1)
            .then_with(|| format!("{}", x.0).cmp(&format!("{}", y.0)))
    });
    kept.dedup_by(|a, b| a.0 == b.0);

    if kept.is_empty() {
        return Err(RydbergError::EmptyBasis);
    }
    let target_index = kept
        .iter()
        .position(|(p, _)| *p == target)
        .ok_or(RydbergError::EmptyBasis)?;

    let (states, energies): (Vec<_>, Vec<_>) = kept.into_iter().unzip();
    Ok(PairBasis {
        states,
        energies,
        target,
        target_index,
        cutoffs: *cutoffs,
        b_gauss,
    })
}
