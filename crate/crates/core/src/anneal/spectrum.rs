//! Low-lying instantaneous spectra via Lanczos iteration with full
//! reorthogonalization, plus a dense fallback for small systems.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::apply_into_real;
use super::{AnnealError, AnnealInstance, ScheduleSpec, MAX_DENSE_SPINS};

/// Lowest `k` eigenvalues of `H(s)` relative to the instantaneous ground
/// energy; the first entry is always 0.
pub fn instantaneous_spectrum(
    inst: &AnnealInstance,
    schedule: &ScheduleSpec,
    s: f64,
    k: usize,
) -> Result<Vec<f64>, AnnealError> {
    spectrum_with_ground(inst, schedule, s, k).map(|(_, levels)| levels)
}

/// Ground energy plus the `k` relative levels.
pub(super) fn spectrum_with_ground(
    inst: &AnnealInstance,
    schedule: &ScheduleSpec,
    s: f64,
    k: usize,
) -> Result<(f64, Vec<f64>), AnnealError> {
    if k < 2 {
        return Err(AnnealError::TooFewLevels(k));
    }
    if k > inst.dim() {
        return Err(AnnealError::TooManyLevels { k, dim: inst.dim() });
    }
    let (a, b, c) = schedule.coefficients(s);
    let absolute = if a == 0.0 {
        // Purely diagonal: sort the classical energies directly. This also
        // reports exact degeneracies, which matters at the end of the sweep.
        let mut diag: Vec<f64> = (0..inst.dim())
            .map(|i| b * inst.diag_field()[i] + c * inst.diag_constraint()[i])
            .collect();
        diag.sort_by(f64::total_cmp);
        diag.truncate(k);
        diag
    } else {
        lanczos_lowest(inst, a, b, c, k)
    };
    let ground = absolute[0];
    Ok((ground, absolute.iter().map(|e| e - ground).collect()))
}

/// Full spectrum from a dense symmetric eigen-decomposition.
pub fn dense_spectrum(
    inst: &AnnealInstance,
    schedule: &ScheduleSpec,
    s: f64,
) -> Result<Vec<f64>, AnnealError> {
    if inst.n_spins() > MAX_DENSE_SPINS {
        return Err(AnnealError::DenseTooLarge {
            n_spins: inst.n_spins(),
            limit: MAX_DENSE_SPINS,
        });
    }
    let h = super::hamiltonian::dense_hamiltonian(inst, schedule, s)?;
    let mut values: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Lowest eigenpair of `H(s)`; the eigenvector is real.
pub(super) fn ground_state_lanczos(
    inst: &AnnealInstance,
    schedule: &ScheduleSpec,
    s: f64,
) -> (f64, Vec<f64>) {
    let (a, b, c) = schedule.coefficients(s);
    if a == 0.0 {
        let mut best = 0usize;
        let mut best_e = f64::INFINITY;
        for i in 0..inst.dim() {
            let e = b * inst.diag_field()[i] + c * inst.diag_constraint()[i];
            if e < best_e {
                best_e = e;
                best = i;
            }
        }
        let mut v = vec![0.0; inst.dim()];
        v[best] = 1.0;
        return (best_e, v);
    }
    let run = lanczos_run(inst, a, b, c, krylov_size(inst.dim(), 2));
    let eig = SymmetricEigen::new(run.tridiagonal.clone());
    let (idx, &val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty spectrum");
    let y = eig.eigenvectors.column(idx);
    let mut vector = vec![0.0; inst.dim()];
    for (j, basis) in run.basis.iter().enumerate() {
        let w = y[j];
        for (v, &bv) in vector.iter_mut().zip(basis) {
            *v += w * bv;
        }
    }
    (val, vector)
}

fn krylov_size(dim: usize, k: usize) -> usize {
    dim.min((8 * k).max(90))
}

struct LanczosRun {
    tridiagonal: DMatrix<f64>,
    basis: Vec<Vec<f64>>,
}

fn lanczos_lowest(inst: &AnnealInstance, a: f64, b: f64, c: f64, k: usize) -> Vec<f64> {
    let dim = inst.dim();
    let mut m = krylov_size(dim, k);
    loop {
        let run = lanczos_run(inst, a, b, c, m);
        let actual_m = run.tridiagonal.nrows();
        let eig = SymmetricEigen::new(run.tridiagonal);
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);

        // Residual bound |beta_m * y[m-1]| for the k-th Ritz pair.
        let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        let converged = actual_m >= dim || {
            let beta_last = run_beta_last(inst, a, b, c, &run.basis);
            let mut order: Vec<usize> = (0..actual_m).collect();
            order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
            order.iter().take(k).all(|&i| {
                let tail = eig.eigenvectors[(actual_m - 1, i)].abs();
                beta_last * tail < 1e-9 * scale
            })
        };
        if converged || m >= dim {
            values.truncate(k);
            return values;
        }
        m = (2 * m).min(dim);
    }
}

/// Norm of `H v_last` projected out of the Krylov space; cheap residual scale.
fn run_beta_last(inst: &AnnealInstance, a: f64, b: f64, c: f64, basis: &[Vec<f64>]) -> f64 {
    let last = basis.last().expect("nonempty basis");
    let mut w = vec![0.0; last.len()];
    apply_into_real(inst, a, b, c, last, &mut w);
    for v in basis {
        let proj = dot(v, &w);
        axpy(-proj, v, &mut w);
    }
    dot(&w, &w).sqrt()
}

fn lanczos_run(inst: &AnnealInstance, a: f64, b: f64, c: f64, m: usize) -> LanczosRun {
    let dim = inst.dim();
    let m = m.min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ead_5eed);
    let mut v = random_unit(&mut rng, dim);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut alphas = Vec::with_capacity(m);
    let mut betas = Vec::with_capacity(m.saturating_sub(1));
    let mut w = vec![0.0; dim];

    for _ in 0..m {
        basis.push(v.clone());
        apply_into_real(inst, a, b, c, &v, &mut w);
        let alpha = dot(&v, &w);
        alphas.push(alpha);
        // Two rounds of classical Gram-Schmidt against the whole basis keep
        // the Ritz values free of ghost copies.
        for _ in 0..2 {
            for u in &basis {
                let proj = dot(u, &w);
                axpy(-proj, u, &mut w);
            }
        }
        if alphas.len() == m {
            break;
        }
        let beta = dot(&w, &w).sqrt();
        if beta < 1e-13 {
            // Krylov space exhausted: continue in a fresh orthogonal direction.
            let mut fresh = random_unit(&mut rng, dim);
            for _ in 0..2 {
                for u in &basis {
                    let proj = dot(u, &fresh);
                    axpy(-proj, u, &mut fresh);
                }
            }
            let norm = dot(&fresh, &fresh).sqrt();
            if norm < 1e-13 {
                break;
            }
            fresh.iter_mut().for_each(|x| *x /= norm);
            betas.push(0.0);
            v = fresh;
        } else {
            betas.push(beta);
            v = w.iter().map(|x| x / beta).collect();
        }
    }

    let size = alphas.len();
    let mut t = DMatrix::zeros(size, size);
    for (i, &alpha) in alphas.iter().enumerate() {
        t[(i, i)] = alpha;
    }
    for (i, &beta) in betas.iter().take(size.saturating_sub(1)).enumerate() {
        t[(i, i + 1)] = beta;
        t[(i + 1, i)] = beta;
    }
    LanczosRun {
        tridiagonal: t,
        basis,
    }
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
