//! Exact state-vector simulation of the encoded annealing sweep.
//!
//! The time-dependent Hamiltonian over `n = n_physical + n_ancilla` spins is
//!
//! ```text
//! H(s) = A(s) [sum_i a_i sx_i + sum_p a_anc sx_anc] + B(s) sum_i J_i sz_i + C(s) sum_p H_p
//! ```
//!
//! with the plaquette constraint `H_p` either in stabilizer form
//! `(gap/4)(sum_corners sz + 2 sz_anc)^2` or as the two-body form with
//! couplings `(alpha, beta)` on the plaquette geometry; at `(2, 1)` the two
//! differ by the constant `-2 gap` per plaquette. Energies are measured in
//! units of the plaquette gap magnitude and times in its inverse.
//!
//! Basis convention: amplitude index bit `i` clear means spin `i` is in the
//! +1 eigenstate of sigma_z.

mod ensemble;
mod evolve;
mod hamiltonian;
mod spectrum;

pub use ensemble::{
    ensemble_instance, ensemble_problem, run_ensemble, EnsembleParams, EnsembleResult,
    EnsembleRow, SweepSummary,
};
pub use evolve::{evolve, evolve_from, evolve_with_trajectory, Evolution, TrajectoryPoint};
pub use hamiltonian::{apply_hamiltonian, dense_hamiltonian};
pub use spectrum::{dense_spectrum, instantaneous_spectrum};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lhz::LhzEncoding;
use crate::plaquette::{self, PlaquetteConfig, PlaquetteParams};

/// Hard cap on the matrix-free state dimension.
pub const MAX_SPINS: usize = 24;
/// Cap for the dense diagonalization path.
pub const MAX_DENSE_SPINS: usize = 14;

#[derive(Debug, Error)]
pub enum AnnealError {
    #[error("{n_spins} spins exceed the matrix-free limit of {limit}")]
    DimensionOverflow { n_spins: usize, limit: usize },
    #[error("two-body constraint parameters (alpha={alpha}, beta={beta}) outside the validity window")]
    WindowViolation { alpha: f64, beta: f64 },
    #[error("transverse fields must be positive for the product ground state")]
    NonPositiveTransverse,
    #[error("initial state norm {norm} is not 1 within 1e-6")]
    NotNormalized { norm: f64 },
    #[error("step-size control exceeded {max_refinements} refinements (last residual {residual:e}); sweep too stiff")]
    Stiffness { max_refinements: u32, residual: f64 },
    #[error("requested {k} levels from a {dim}-dimensional spectrum")]
    TooManyLevels { k: usize, dim: usize },
    #[error("spectrum needs at least 2 levels, got {0}")]
    TooFewLevels(usize),
    #[error("dense path limited to {limit} spins, got {n_spins}")]
    DenseTooLarge { n_spins: usize, limit: usize },
}

/// Shape of the scheduling functions over normalized sweep time `s in [0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleForm {
    /// `A = 1 - s`, `B = C = s`.
    LinearNormalized,
    /// `A = T(1 - s)`, `B = C = T s`: the raw unnormalized ramp.
    LinearUnnormalized,
    /// Time-independent coefficients, for calibration against closed forms.
    Constant { a: f64, b: f64, c: f64 },
}

/// A sweep: total duration (units of inverse gap) and schedule shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleSpec {
    pub total_time: f64,
    pub form: ScheduleForm,
}

impl ScheduleSpec {
    pub fn linear(total_time: f64) -> Self {
        Self {
            total_time,
            form: ScheduleForm::LinearNormalized,
        }
    }

    /// Schedule coefficients `(A, B, C)` at normalized time `s`.
    pub fn coefficients(&self, s: f64) -> (f64, f64, f64) {
        match self.form {
            ScheduleForm::LinearNormalized => (1.0 - s, s, s),
            ScheduleForm::LinearUnnormalized => {
                let t = self.total_time;
                (t * (1.0 - s), t * s, t * s)
            }
            ScheduleForm::Constant { a, b, c } => (a, b, c),
        }
    }
}

/// Constraint term used on each plaquette.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "form")]
pub enum ConstraintForm {
    Stabilizer,
    TwoBody { alpha: f64, beta: f64 },
}

/// A fully specified sweep instance: encoding, constraint form, and gap.
///
/// A negative gap requests the follow-the-maximum convention; it is realized
/// by negating every longitudinal field and using |gap|, which is unitarily
/// equivalent (global sigma_x conjugation maps one problem onto the other).
#[derive(Debug, Clone)]
pub struct AnnealInstance {
    encoding: LhzEncoding,
    constraint: ConstraintForm,
    gap: f64,
    max_state_convention: bool,
    /// Longitudinal fields actually used (sign-flipped when gap < 0).
    working_fields: Vec<f64>,
    /// Constraint energy of each of the 32 plaquette configurations,
    /// indexed by corner/ancilla bits (bit set = spin down).
    plaquette_table: [f64; 32],
    /// Diagonal of the field term over basis states.
    diag_field: Vec<f64>,
    /// Diagonal of the constraint term over basis states.
    diag_constraint: Vec<f64>,
}

impl AnnealInstance {
    pub fn new(
        encoding: LhzEncoding,
        constraint: ConstraintForm,
        gap: f64,
    ) -> Result<Self, AnnealError> {
        let n_spins = encoding.n_spins();
        if n_spins > MAX_SPINS {
            return Err(AnnealError::DimensionOverflow {
                n_spins,
                limit: MAX_SPINS,
            });
        }
        if let ConstraintForm::TwoBody { alpha, beta } = constraint {
            if !plaquette::validity_window(alpha, beta) {
                return Err(AnnealError::WindowViolation { alpha, beta });
            }
        }
        if encoding
            .transverse_physical()
            .iter()
            .chain(encoding.transverse_ancilla())
            .any(|&a| a <= 0.0)
        {
            return Err(AnnealError::NonPositiveTransverse);
        }

        let max_state_convention = gap < 0.0;
        let gap_mag = gap.abs();
        let working_fields: Vec<f64> = if max_state_convention {
            encoding.fields().iter().map(|j| -j).collect()
        } else {
            encoding.fields().to_vec()
        };

        let mut plaquette_table = [0.0; 32];
        let params = match constraint {
            ConstraintForm::Stabilizer => PlaquetteParams::new(0.0, 0.0, gap_mag),
            ConstraintForm::TwoBody { alpha, beta } => PlaquetteParams::new(alpha, beta, gap_mag),
        };
        for (code, entry) in plaquette_table.iter_mut().enumerate() {
            let bit = |k: usize| if code >> k & 1 == 0 { 1i8 } else { -1 };
            let cfg = PlaquetteConfig {
                corners: [bit(0), bit(1), bit(2), bit(3)],
                ancilla: bit(4),
            };
            *entry = match constraint {
                ConstraintForm::Stabilizer => gap_mag / 4.0 * plaquette::stabilizer_energy(&cfg),
                ConstraintForm::TwoBody { .. } => {
                    params.to_physical(plaquette::plaquette_energy(&cfg, &params))
                }
            };
        }

        let mut inst = Self {
            encoding,
            constraint,
            gap,
            max_state_convention,
            working_fields,
            plaquette_table,
            diag_field: Vec::new(),
            diag_constraint: Vec::new(),
        };
        inst.build_diagonals();
        Ok(inst)
    }

    fn build_diagonals(&mut self) {
        let dim = self.dim();
        let n_physical = self.encoding.n_physical();
        let mut diag_field = vec![0.0; dim];
        let mut diag_constraint = vec![0.0; dim];
        for (b, (f, c)) in diag_field.iter_mut().zip(&mut diag_constraint).enumerate() {
            let mut field = 0.0;
            for (i, j) in self.working_fields.iter().enumerate().take(n_physical) {
                let s = 1.0 - 2.0 * ((b >> i & 1) as f64);
                field += j * s;
            }
            *f = field;
            let mut constraint = 0.0;
            for p in self.encoding.plaquettes() {
                let code = (b >> p.corners[0] & 1)
                    | (b >> p.corners[1] & 1) << 1
                    | (b >> p.corners[2] & 1) << 2
                    | (b >> p.corners[3] & 1) << 3
                    | (b >> p.ancilla & 1) << 4;
                constraint += self.plaquette_table[code];
            }
            *c = constraint;
        }
        self.diag_field = diag_field;
        self.diag_constraint = diag_constraint;
    }

    pub fn encoding(&self) -> &LhzEncoding {
        &self.encoding
    }

    pub fn constraint(&self) -> ConstraintForm {
        self.constraint
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn is_max_state_convention(&self) -> bool {
        self.max_state_convention
    }

    pub fn n_spins(&self) -> usize {
        self.encoding.n_spins()
    }

    pub fn dim(&self) -> usize {
        1 << self.n_spins()
    }

    pub fn diag_field(&self) -> &[f64] {
        &self.diag_field
    }

    pub fn diag_constraint(&self) -> &[f64] {
        &self.diag_constraint
    }

    /// Transverse field of global spin index `i` (physical, then ancilla).
    pub fn transverse(&self, i: usize) -> f64 {
        let n_physical = self.encoding.n_physical();
        if i < n_physical {
            self.encoding.transverse_physical()[i]
        } else {
            self.encoding.transverse_ancilla()[i - n_physical]
        }
    }

    /// Classical (s = 1) energy of basis state `b`.
    pub fn final_energy(&self, b: usize) -> f64 {
        self.diag_field[b] + self.diag_constraint[b]
    }

    /// Basis indices of the classical ground manifold at `s = 1`, with its
    /// energy. Degeneracies within a relative tolerance of 1e-9 are included.
    pub fn final_ground_manifold(&self) -> (Vec<usize>, f64) {
        let mut min = f64::INFINITY;
        for b in 0..self.dim() {
            let e = self.final_energy(b);
            if e < min {
                min = e;
            }
        }
        let tol = 1e-9 * min.abs().max(1.0);
        let manifold = (0..self.dim())
            .filter(|&b| self.final_energy(b) <= min + tol)
            .collect();
        (manifold, min)
    }
}

/// Complex amplitudes over the full spin register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    n_spins: usize,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>, n_spins: usize) -> Self {
        assert_eq!(amps.len(), 1 << n_spins);
        Self { amps, n_spins }
    }

    /// The exact ground state of `H(0)`: every spin anti-aligned with its
    /// positive transverse field, a product state.
    pub fn transverse_ground(n_spins: usize) -> Self {
        let dim = 1usize << n_spins;
        let norm = 1.0 / (dim as f64).sqrt();
        let amps = (0..dim)
            .map(|b| {
                let sign = if (b as u32).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                Complex64::new(sign * norm, 0.0)
            })
            .collect();
        Self { amps, n_spins }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Success probability: weight of the state on the classical ground manifold
/// of the instance, degeneracy included.
pub fn success_probability(psi: &StateVector, inst: &AnnealInstance) -> f64 {
    let (manifold, _) = inst.final_ground_manifold();
    manifold
        .iter()
        .map(|&b| psi.amplitudes()[b].norm_sqr())
        .sum()
}
