//! Exact classical analysis of the single-plaquette constraint Hamiltonian.
//!
//! The constraint couples the four corner spins of a plaquette pairwise
//! (strength 1 along edges, `beta` along diagonals) and each corner to a
//! central ancilla (strength `alpha`):
//!
//! ```text
//! H / (gap/2) = sum_edges s_i s_j + beta * sum_diag s_i s_j + alpha * tau * sum_i s_i
//! ```
//!
//! Energies here are reported in units of `gap/2`; [`PlaquetteParams::to_physical`]
//! converts to 2*pi*kHz. Inside the validity window the eight odd-parity corner
//! states (each with the stabilizer-satisfying ancilla) are the exact,
//! degenerate ground manifold.

use serde::{Deserialize, Serialize};

/// Coupling ratios and the physical energy scale of one plaquette.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaquetteParams {
    /// Ancilla-corner coupling relative to the edge coupling.
    pub alpha: f64,
    /// Diagonal coupling relative to the edge coupling.
    pub beta: f64,
    /// Energy gap in 2*pi*kHz; sets the physical scale, sign included.
    pub gap: f64,
}

impl PlaquetteParams {
    pub fn new(alpha: f64, beta: f64, gap: f64) -> Self {
        Self { alpha, beta, gap }
    }

    /// Convert an energy in units of `gap/2` to 2*pi*kHz.
    pub fn to_physical(&self, e_half_gap: f64) -> f64 {
        e_half_gap * self.gap / 2.0
    }
}

/// Corner spins in cyclic order plus the central ancilla.
///
/// Adjacent corners (cyclically) are edges; corners two apart are diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlaquetteConfig {
    pub corners: [i8; 4],
    pub ancilla: i8,
}

impl PlaquetteConfig {
    /// Enumerate all 32 configurations, corner bits fastest.
    pub fn all() -> impl Iterator<Item = PlaquetteConfig> {
        (0..32usize).map(|code| {
            let bit = |k: usize| if code >> k & 1 == 0 { 1i8 } else { -1 };
            PlaquetteConfig {
                corners: [bit(0), bit(1), bit(2), bit(3)],
                ancilla: bit(4),
            }
        })
    }

    pub fn corner_sum(&self) -> i32 {
        self.corners.iter().map(|&s| i32::from(s)).sum()
    }

    /// Odd parity means the four corners sum to +2 or -2.
    pub fn is_odd_parity(&self) -> bool {
        self.corner_sum().abs() == 2
    }

    /// Stabilizer value `sum_i s_i + 2 tau`.
    pub fn stabilizer(&self) -> i32 {
        self.corner_sum() + 2 * i32::from(self.ancilla)
    }
}

/// Structural class of a plaquette configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaquetteClass {
    /// Odd parity with the stabilizer-satisfying ancilla orientation.
    OddRightAncilla,
    /// Odd parity with the opposite ancilla orientation.
    OddWrongAncilla,
    /// All four corners aligned.
    Polarized,
    /// Two corners up, two down; energy independent of the ancilla.
    SpinIce,
}

impl PlaquetteClass {
    pub fn label(&self) -> &'static str {
        match self {
            PlaquetteClass::OddRightAncilla => "odd_right",
            PlaquetteClass::OddWrongAncilla => "odd_wrong",
            PlaquetteClass::Polarized => "polarized",
            PlaquetteClass::SpinIce => "spin_ice",
        }
    }
}

pub fn classify(cfg: &PlaquetteConfig) -> PlaquetteClass {
    match cfg.corner_sum() {
        2 | -2 => {
            if cfg.stabilizer() == 0 {
                PlaquetteClass::OddRightAncilla
            } else {
                PlaquetteClass::OddWrongAncilla
            }
        }
        4 | -4 => PlaquetteClass::Polarized,
        _ => PlaquetteClass::SpinIce,
    }
}

/// Energy of one configuration in units of `gap/2`.
pub fn plaquette_energy(cfg: &PlaquetteConfig, p: &PlaquetteParams) -> f64 {
    let s = cfg.corners.map(f64::from);
    let edges = s[0] * s[1] + s[1] * s[2] + s[2] * s[3] + s[3] * s[0];
    let diagonals = s[0] * s[2] + s[1] * s[3];
    let sum: f64 = s.iter().sum();
    edges + p.beta * diagonals + p.alpha * f64::from(cfg.ancilla) * sum
}

/// Stabilizer energy `(sum_i s_i + 2 tau)^2`, in units of `gap/4`.
pub fn stabilizer_energy(cfg: &PlaquetteConfig) -> f64 {
    let s = cfg.stabilizer();
    f64::from(s * s)
}

/// One spectrum entry: configuration, class, and energy in units of `gap/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLevel {
    pub config: PlaquetteConfig,
    pub class: PlaquetteClass,
    pub energy: f64,
}

/// All 32 levels, sorted by energy (ties keep enumeration order).
pub fn plaquette_spectrum(p: &PlaquetteParams) -> Vec<SpectrumLevel> {
    let mut levels: Vec<SpectrumLevel> = PlaquetteConfig::all()
        .map(|config| SpectrumLevel {
            config,
            class: classify(&config),
            energy: plaquette_energy(&config, p),
        })
        .collect();
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    levels
}

/// The exact set of minimum-energy configurations.
///
/// Membership uses strict floating-point comparison against the minimum, so
/// exact degeneracies (which arise from the small-integer structure of the
/// energies) are kept and near-degeneracies from parameter round-off are
/// resolved consistently with [`validity_window`].
pub fn ground_manifold(p: &PlaquetteParams) -> Vec<PlaquetteConfig> {
    let levels = plaquette_spectrum(p);
    let min = levels[0].energy;
    levels
        .into_iter()
        .filter(|l| l.energy == min)
        .map(|l| l.config)
        .collect()
}

/// True exactly when the eight odd-parity states are the strict ground
/// manifold, from the level crossings of the closed-form spectrum: the
/// odd branch `-2 alpha` must undercut the spin-ice floors `-4 + 2 beta`
/// (crossing at `alpha = 2 - beta`) and `-2 beta` (at `alpha = beta`) as
/// well as the polarized branch `4 + 2 beta - 4 alpha` (at `alpha = 2 + beta`).
pub fn odd_ground_window(alpha: f64, beta: f64) -> bool {
    alpha > beta && alpha > 2.0 - beta && alpha < 2.0 + beta
}

/// Usable design window: the odd-parity ground-manifold condition restricted
/// to `0 < beta <= 1`, where diagonal couplings cannot exceed edge couplings.
pub fn validity_window(alpha: f64, beta: f64) -> bool {
    beta > 0.0 && beta <= 1.0 && odd_ground_window(alpha, beta)
}

/// True when the ground manifold is exactly the eight odd-parity
/// configurations with correctly oriented ancillas.
pub fn ground_manifold_is_odd(p: &PlaquetteParams) -> bool {
    let manifold = ground_manifold(p);
    manifold.len() == 8
        && manifold
            .iter()
            .all(|c| classify(c) == PlaquetteClass::OddRightAncilla)
}
