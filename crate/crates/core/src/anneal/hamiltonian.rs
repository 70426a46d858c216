//! Matrix-free application of the sweep Hamiltonian and a dense fallback.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{AnnealError, AnnealInstance, ScheduleSpec, StateVector, MAX_DENSE_SPINS};

/// Apply `H(s)` to a state: diagonal field and constraint terms plus the
/// transverse bit-flip term.
pub fn apply_hamiltonian(
    inst: &AnnealInstance,
    schedule: &ScheduleSpec,
    s: f64,
    psi: &StateVector,
) -> StateVector {
    let (a, b, c) = schedule.coefficients(s);
    let amps = psi.amplitudes();
    let mut out = vec![Complex64::ZERO; amps.len()];
    apply_into(inst, a, b, c, amps, &mut out);
    StateVector::new(out, psi.n_spins())
}

/// `out = (A Hx + B Hz + C Hc) psi` with explicit coefficients.
pub(super) fn apply_into(
    inst: &AnnealInstance,
    a: f64,
    b: f64,
    c: f64,
    psi: &[Complex64],
    out: &mut [Complex64],
) {
    let diag_f = inst.diag_field();
    let diag_c = inst.diag_constraint();
    for (i, o) in out.iter_mut().enumerate() {
        *o = Complex64::new(b * diag_f[i] + c * diag_c[i], 0.0) * psi[i];
    }
    if a != 0.0 {
        for spin in 0..inst.n_spins() {
            let coupling = a * inst.transverse(spin);
            let mask = 1usize << spin;
            for base in (0..psi.len()).step_by(mask << 1) {
                for low in base..base + mask {
                    let high = low | mask;
                    out[low] += coupling * psi[high];
                    out[high] += coupling * psi[low];
                }
            }
        }
    }
}

/// Real version of [`apply_into`] for the symmetric eigensolvers.
pub(super) fn apply_into_real(
    inst: &AnnealInstance,
    a: f64,
    b: f64,
    c: f64,
    psi: &[f64],
    out: &mut [f64],
) {
    let diag_f = inst.diag_field();
    let diag_c = inst.diag_constraint();
    for (i, o) in out.iter_mut().enumerate() {
        *o = (b * diag_f[i] + c * diag_c[i]) * psi[i];
    }
    if a != 0.0 {
        for spin in 0..inst.n_spins() {
            let coupling = a * inst.transverse(spin);
            let mask = 1usize << spin;
            for base in (0..psi.len()).step_by(mask << 1) {
                for low in base..base + mask {
                    let high = low | mask;
                    out[low] += coupling * psi[high];
                    out[high] += coupling * psi[low];
                }
            }
        }
    }
}

/// Dense real-symmetric matrix of `H(s)`, for small systems.
pub fn dense_hamiltonian(
    inst: &AnnealInstance,
    schedule: &ScheduleSpec,
    s: f64,
) -> Result<DMatrix<f64>, AnnealError> {
    if inst.n_spins() > MAX_DENSE_SPINS {
        return Err(AnnealError::DenseTooLarge {
            n_spins: inst.n_spins(),
            limit: MAX_DENSE_SPINS,
        });
    }
    let (a, b, c) = schedule.coefficients(s);
    let dim = inst.dim();
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        h[(i, i)] = b * inst.diag_field()[i] + c * inst.diag_constraint()[i];
    }
    for spin in 0..inst.n_spins() {
        let coupling = a * inst.transverse(spin);
        let mask = 1usize << spin;
        for low in 0..dim {
            if low & mask == 0 {
                let high = low | mask;
                h[(low, high)] += coupling;
                h[(high, low)] += coupling;
            }
        }
    }
    Ok(h)
}
