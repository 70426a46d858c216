//! Molecular pair potentials: diagonalization over a distance grid,
//! adiabatic curve matching, resonance scanning, and the on-disk cache.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::basis::{BasisCutoffs, PairBasis};
use super::dipole::dipole_dipole_element;
use super::radial::RadialProvider;
use super::state::PairState;
use super::RydbergError;

/// Distance-resolved eigenenergies and target overlaps.
///
/// Energies are MHz relative to the target pair's dissociation limit; curve
/// index follows the adiabatic matching seeded at the largest distance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MolecularCurves {
    pub r_grid_um: Vec<f64>,
    /// `energies[curve][grid point]`.
    pub energies: Vec<Vec<f64>>,
    /// Signed overlap of each curve with the target pair state.
    pub overlaps: Vec<Vec<f64>>,
    pub meta: CurveMeta,
}

/// Everything that determines a curve set; cache hits require exact equality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub target: PairState,
    pub cutoffs: BasisCutoffs,
    pub b_gauss: f64,
    pub theta: f64,
    pub basis_size: usize,
    pub radial_provider: String,
    pub defect_table_version: String,
}

impl MolecularCurves {
    pub fn n_curves(&self) -> usize {
        self.energies.len()
    }

    /// Index of the curve with the largest |overlap| at grid point `k`.
    pub fn dominant_curve_at(&self, k: usize) -> usize {
        (0..self.n_curves())
            .max_by(|&i, &j| {
                self.overlaps[i][k]
                    .abs()
                    .total_cmp(&self.overlaps[j][k].abs())
            })
            .expect("nonempty curve set")
    }

    /// Linear interpolation of a curve's energy at distance `r`.
    pub fn energy_at(&self, curve: usize, r_um: f64) -> f64 {
        interp(&self.r_grid_um, &self.energies[curve], r_um)
    }

    pub fn overlap_at(&self, curve: usize, r_um: f64) -> f64 {
        interp(&self.r_grid_um, &self.overlaps[curve], r_um)
    }
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    match xs.binary_search_by(|p| p.total_cmp(&x)) {
        Ok(i) => ys[i],
        Err(0) => ys[0],
        Err(i) if i >= xs.len() => ys[xs.len() - 1],
        Err(i) => {
            let w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            ys[i - 1] * (1.0 - w) + ys[i] * w
        }
    }
}

/// Diagonalize the pair Hamiltonian over a distance grid.
///
/// The interaction matrix is assembled once at unit distance and rescaled by
/// `1/R^3`; each grid point is an independent symmetric eigenproblem. Curves
/// are matched across neighboring distances by eigenvector overlap, walking
/// inward from the asymptotic region, with ties broken by energy proximity.
pub fn diagonalize_pair(
    basis: &PairBasis,
    r_grid_um: &[f64],
    theta: f64,
    radial: &dyn RadialProvider,
) -> Result<MolecularCurves, RydbergError> {
    if r_grid_um.is_empty() || r_grid_um.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RydbergError::BadGrid);
    }
    if r_grid_um[0] <= 0.0 {
        return Err(RydbergError::BadDistance { r_um: r_grid_um[0] });
    }
    let n = basis.len();

    // Angular + radial structure at R = 1 um; phi = 0 keeps it real.
    let mut coupling = DMatrix::zeros(n, n);
    for i in 0..n {
        for k in i..n {
            let v = dipole_dipole_element(
                &basis.states[i],
                &basis.states[k],
                1.0,
                theta,
                0.0,
                radial,
            )?;
            debug_assert!(v.im.abs() <= 1e-12 * v.re.abs().max(1.0));
            coupling[(i, k)] = v.re;
            coupling[(k, i)] = v.re;
        }
    }

    // Independent eigenproblems, largest R first for the adiabatic walk.
    let decompositions: Vec<(Vec<f64>, DMatrix<f64>)> = r_grid_um
        .par_iter()
        .map(|&r| {
            let mut h = &coupling / r.powi(3);
            for i in 0..n {
                h[(i, i)] += basis.energies[i];
            }
            let eig = SymmetricEigen::new(h);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
            let mut vectors = DMatrix::zeros(n, n);
            for (col, &i) in order.iter().enumerate() {
                vectors.set_column(col, &eig.eigenvectors.column(i));
            }
            (values, vectors)
        })
        .collect();

    let m = r_grid_um.len();
    let mut energies = vec![vec![0.0; m]; n];
    let mut overlaps = vec![vec![0.0; m]; n];

    // Seed at the largest distance: curves ordered by asymptotic energy.
    let last = m - 1;
    let mut previous = decompositions[last].1.clone();
    for curve in 0..n {
        energies[curve][last] = decompositions[last].0[curve];
        overlaps[curve][last] = previous[(basis.target_index, curve)];
    }

    for step in (0..last).rev() {
        let (values, vectors) = &decompositions[step];
        let assignment = match_by_overlap(&previous, vectors, values);
        let mut matched = DMatrix::zeros(n, n);
        for curve in 0..n {
            let col = assignment[curve];
            // Keep eigenvector signs continuous along each curve.
            let dot: f64 = (0..n)
                .map(|row| previous[(row, curve)] * vectors[(row, col)])
                .sum();
            let sign = if dot < 0.0 { -1.0 } else { 1.0 };
            for row in 0..n {
                matched[(row, curve)] = sign * vectors[(row, col)];
            }
            energies[curve][step] = values[col];
            overlaps[curve][step] = matched[(basis.target_index, curve)];
        }
        previous = matched;
    }

    Ok(MolecularCurves {
        r_grid_um: r_grid_um.to_vec(),
        energies,
        overlaps,
        meta: CurveMeta {
            target: basis.target,
            cutoffs: basis.cutoffs,
            b_gauss: basis.b_gauss,
            theta,
            basis_size: n,
            radial_provider: radial.id(),
            defect_table_version: super::defects::defect_table().version.clone(),
        },
    })
}

/// Greedy assignment maximizing |<prev_i|next_j>|, energy proximity as the
/// tie-break. Returns `assignment[curve] = column`.
fn match_by_overlap(
    previous: &DMatrix<f64>,
    next: &DMatrix<f64>,
    _values: &[f64],
) -> Vec<usize> {
    let n = previous.ncols();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for curve in 0..n {
        for col in 0..n {
            let dot: f64 = (0..n)
                .map(|row| previous[(row, curve)] * next[(row, col)])
                .sum();
            pairs.push((dot.abs(), curve, col));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut assignment = vec![usize::MAX; n];
    let mut taken_curve = vec![false; n];
    let mut taken_col = vec![false; n];
    for (_, curve, col) in pairs {
        if !taken_curve[curve] && !taken_col[col] {
            assignment[curve] = col;
            taken_curve[curve] = true;
            taken_col[col] = true;
        }
    }
    assignment
}

/// One flagged laser-molecular resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceHit {
    pub curve: usize,
    pub r_um: f64,
    /// Two-photon detuning of the curve at that distance, MHz.
    pub detuning_mhz: f64,
    pub overlap: f64,
    /// The lattice distance this point threatens.
    pub lattice_distance_um: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceThresholds {
    /// Flag when |detuning| falls below this, MHz.
    pub detuning_mhz: f64,
    /// ... and the target overlap magnitude exceeds this.
    pub min_overlap: f64,
    /// Relative neighborhood around each lattice distance to inspect.
    pub distance_window: f64,
}

impl Default for ResonanceThresholds {
    fn default() -> Self {
        Self {
            detuning_mhz: 1.0,
            min_overlap: 0.05,
            distance_window: 0.15,
        }
    }
}

/// Scan curves for laser-resonant molecular states near lattice distances.
///
/// `detuning_sum_mhz` is the summed laser detuning of the two dressing
/// photons; a curve crossing it with appreciable target overlap near a
/// lattice distance would be resonantly excited rather than weakly admixed.
/// An empty report means the design point is safe.
pub fn resonance_scan(
    curves: &MolecularCurves,
    detuning_sum_mhz: f64,
    lattice_distances_um: &[f64],
    thresholds: &ResonanceThresholds,
) -> Vec<ResonanceHit> {
    let mut hits = Vec::new();
    for (curve, (energy_row, overlap_row)) in
        curves.energies.iter().zip(&curves.overlaps).enumerate()
    {
        for (k, &r) in curves.r_grid_um.iter().enumerate() {
            let near = lattice_distances_um
                .iter()
                .copied()
                .find(|d| (r - d).abs() <= thresholds.distance_window * d);
            let Some(distance) = near else { continue };
            let detuning = energy_row[k] - detuning_sum_mhz;
            if detuning.abs() < thresholds.detuning_mhz
                && overlap_row[k].abs() > thresholds.min_overlap
            {
                hits.push(ResonanceHit {
                    curve,
                    r_um: r,
                    detuning_mhz: detuning,
                    overlap: overlap_row[k],
                    lattice_distance_um: distance,
                });
            }
        }
    }
    hits
}

/// Self-describing cache file: metadata, payload, and an integrity digest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveCacheFile {
    pub meta: CurveMeta,
    pub payload_sha256: String,
    pub curves: MolecularCurves,
}

fn payload_digest(curves: &MolecularCurves) -> String {
    let payload =
        serde_json::to_vec(&(&curves.r_grid_um, &curves.energies, &curves.overlaps))
            .expect("curve payload serializes");
    let mut hasher = Sha256::new();
    hasher.update(&payload);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl CurveCacheFile {
    pub fn new(curves: MolecularCurves) -> Self {
        Self {
            meta: curves.meta.clone(),
            payload_sha256: payload_digest(&curves),
            curves,
        }
    }

    /// Recompute the digest; a mismatch marks the entry corrupt.
    pub fn verify(&self) -> bool {
        self.meta == self.curves.meta && payload_digest(&self.curves) == self.payload_sha256
    }

    /// Usable for a request with this metadata?
    pub fn matches(&self, meta: &CurveMeta) -> bool {
        self.meta == *meta && self.verify()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rydberg::basis::build_pair_basis;
    use crate::rydberg::radial::{TableRadial, UnitRadial};
    use crate::rydberg::state::{RydbergState, Species};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn rb(n: u32, l: u32, dj: i32, dmj: i32) -> RydbergState {
        RydbergState::new(Species::Rb87, n, l, dj, dmj).unwrap()
    }

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    fn small_basis() -> PairBasis {
        let target = PairState::new(rb(39, 1, 3, -1), rb(39, 1, 3, -1));
        let cutoffs = BasisCutoffs {
            energy_window_mhz: 3000.0,
            max_delta_n: 2,
            max_l: 1,
            include_first_shell: false,
        };
        build_pair_basis(target, &cutoffs, 26.0).unwrap()
    }

    #[test]
    fn curves_flatten_to_pair_energies_without_coupling() {
        // A radial table with no entries inside an l <= 0 basis never
        // couples; use unit radial but an S-only basis instead.
        let target = PairState::new(rb(39, 0, 1, 1), rb(39, 0, 1, 1));
        let cutoffs = BasisCutoffs {
            energy_window_mhz: 2.0e5,
            max_delta_n: 1,
            max_l: 0,
            include_first_shell: false,
        };
        let basis = build_pair_basis(target, &cutoffs, 0.0).unwrap();
        let curves =
            diagonalize_pair(&basis, &grid(0.5, 3.0, 12), FRAC_PI_2, &UnitRadial).unwrap();
        for curve in 0..curves.n_curves() {
            let asymptote = curves.energies[curve][11];
            for k in 0..12 {
                assert_relative_eq!(curves.energies[curve][k], asymptote, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn two_state_toy_matches_closed_form() {
        // Two pair states split by 2 delta0 and coupled by c/R^3 give
        // eigenvalues delta0 +- sqrt(delta0^2 + c^2/R^6).
        let a = PairState::new(rb(50, 0, 1, 1), rb(50, 0, 1, 1));
        let b = PairState::new(rb(50, 1, 1, 1), rb(50, 1, 1, 1));
        let mut table = TableRadial::new("toy");
        table.insert(&a.first, &b.first, 1000.0);

        // Hand-build the basis: energies relative to `a`.
        let delta0 = 40.0;
        let basis = PairBasis {
            states: vec![a, b],
            energies: vec![0.0, 2.0 * delta0],
            target: a,
            target_index: 0,
            cutoffs: BasisCutoffs {
                energy_window_mhz: 1e6,
                max_delta_n: 1,
                max_l: 1,
                include_first_shell: false,
            },
            b_gauss: 0.0,
        };
        let r_grid = grid(0.4, 4.0, 40);
        let curves = diagonalize_pair(&basis, &r_grid, FRAC_PI_2, &table).unwrap();

        let coupling = dipole_dipole_element(&a, &b, 1.0, FRAC_PI_2, 0.0, &table)
            .unwrap()
            .re;
        assert!(coupling.abs() > 0.0);
        for (k, &r) in r_grid.iter().enumerate() {
            let c = coupling / r.powi(3);
            let split = (delta0 * delta0 + c * c).sqrt();
            let low = delta0 - split;
            let high = delta0 + split;
            let mut got = [curves.energies[0][k], curves.energies[1][k]];
            got.sort_by(f64::total_cmp);
            assert_relative_eq!(got[0], low, epsilon = 1e-10 * (1.0 + low.abs()));
            assert_relative_eq!(got[1], high, epsilon = 1e-10 * (1.0 + high.abs()));
        }
        // Overlap normalization: the target weight over all curves is 1.
        for k in 0..r_grid.len() {
            let total: f64 = (0..2).map(|c| curves.overlaps[c][k].powi(2)).sum();
            assert_relative_eq!(total, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn asymptotic_freedom_at_large_distance() {
        let basis = small_basis();
        let curves =
            diagonalize_pair(&basis, &grid(6.0, 30.0, 10), FRAC_PI_2, &UnitRadial).unwrap();
        // At the far end every curve sits on a pair energy.
        let far = curves.r_grid_um.len() - 1;
        for curve in 0..curves.n_curves() {
            let e = curves.energies[curve][far];
            let closest = basis
                .energies
                .iter()
                .map(|p| (e - p).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(closest < 1.0, "curve {curve} ended {closest} MHz from any asymptote");
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let basis = small_basis();
        assert!(matches!(
            diagonalize_pair(&basis, &[], FRAC_PI_2, &UnitRadial),
            Err(RydbergError::BadGrid)
        ));
        assert!(matches!(
            diagonalize_pair(&basis, &[1.0, 0.5], FRAC_PI_2, &UnitRadial),
            Err(RydbergError::BadGrid)
        ));
    }

    #[test]
    fn resonance_scan_monotone_in_threshold() {
        let basis = small_basis();
        let curves =
            diagonalize_pair(&basis, &grid(0.5, 2.0, 30), FRAC_PI_2, &UnitRadial).unwrap();
        let distances = [0.63, 0.89, 1.26];
        let tight = ResonanceThresholds {
            detuning_mhz: 1e-6,
            min_overlap: 0.999999,
            distance_window: 0.05,
        };
        assert!(resonance_scan(&curves, -991.0, &distances, &tight).is_empty());

        let huge = ResonanceThresholds {
            detuning_mhz: 1e9,
            min_overlap: 0.0,
            distance_window: 0.5,
        };
        let all = resonance_scan(&curves, -991.0, &distances, &huge);
        assert!(!all.is_empty());
    }

    #[test]
    fn cache_file_verifies_and_detects_tampering() {
        let basis = small_basis();
        let curves =
            diagonalize_pair(&basis, &grid(1.0, 2.0, 4), FRAC_PI_2, &UnitRadial).unwrap();
        let file = CurveCacheFile::new(curves);
        assert!(file.verify());
        assert!(file.matches(&file.meta.clone()));

        let mut tampered = file.clone();
        tampered.curves.energies[0][0] += 1.0;
        assert!(!tampered.verify());

        let mut other_meta = file.meta.clone();
        other_meta.b_gauss += 1.0;
        assert!(!file.matches(&other_meta));
    }
}
