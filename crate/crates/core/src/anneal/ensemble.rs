//! Seeded ensembles of random instances swept at several total times.
//!
//! Instances draw their couplings from independent, stream-separated RNGs,
//! so results are identical for any thread count and any execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    evolve, success_probability, AnnealError, AnnealInstance, ConstraintForm, ScheduleForm,
    ScheduleSpec,
};
use crate::lhz::{encode, LogicalProblem};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleParams {
    pub n_instances: usize,
    /// Logical problem size; the minimal instance is 4.
    pub n_logical: usize,
    /// Couplings are drawn uniformly from [-field_range, field_range].
    pub field_range: f64,
    /// Total sweep times, units of inverse gap.
    pub sweep_times: Vec<f64>,
    pub seed: u64,
    pub constraint: ConstraintForm,
    pub gap: f64,
    /// Uniform transverse field on physical spins.
    pub a_site: f64,
    /// Uniform transverse field on ancilla spins.
    pub a_ancilla: f64,
    pub schedule_form: ScheduleForm,
    pub dt_max: f64,
    pub tol: f64,
}

impl Default for EnsembleParams {
    fn default() -> Self {
        Self {
            n_instances: 40,
            n_logical: 4,
            field_range: 0.5,
            sweep_times: vec![50.0, 100.0, 150.0],
            seed: 0,
            constraint: ConstraintForm::Stabilizer,
            gap: 1.0,
            a_site: 1.0,
            a_ancilla: 1.0,
            schedule_form: ScheduleForm::LinearNormalized,
            dt_max: 0.05,
            tol: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRow {
    pub sweep_time: f64,
    pub instance: usize,
    pub p0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub sweep_time: f64,
    pub mean_p0: f64,
    pub std_p0: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub rows: Vec<EnsembleRow>,
    pub summaries: Vec<SweepSummary>,
}

/// Draw the logical problem of ensemble member `index`.
pub fn ensemble_problem(params: &EnsembleParams, index: usize) -> LogicalProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index as u64 + 1);
    let mut problem = LogicalProblem::new(params.n_logical).expect("ensemble size >= 3");
    for mu in 0..params.n_logical {
        for nu in (mu + 1)..params.n_logical {
            let j = rng.gen_range(-params.field_range..=params.field_range);
            problem.set_coupling(mu, nu, j).expect("finite draw");
        }
    }
    problem
}

/// Build the sweep instance of ensemble member `index`.
pub fn ensemble_instance(
    params: &EnsembleParams,
    index: usize,
) -> Result<AnnealInstance, AnnealError> {
    let problem = ensemble_problem(params, index);
    let mut encoding = encode(&problem).expect("encodable ensemble problem");
    encoding.set_uniform_transverse(params.a_site, params.a_ancilla);
    AnnealInstance::new(encoding, params.constraint, params.gap)
}

/// Run the full ensemble. Rows are ordered by sweep time, then instance.
pub fn run_ensemble(params: &EnsembleParams) -> Result<EnsembleResult, AnnealError> {
    let per_instance: Vec<Result<Vec<f64>, AnnealError>> = (0..params.n_instances)
        .into_par_iter()
        .map(|index| {
            let inst = ensemble_instance(params, index)?;
            params
                .sweep_times
                .iter()
                .map(|&t| {
                    let schedule = ScheduleSpec {
                        total_time: t,
                        form: params.schedule_form,
                    };
                    let evo = evolve(&inst, &schedule, params.dt_max, params.tol)?;
                    Ok(success_probability(&evo.psi, &inst))
                })
                .collect()
        })
        .collect();

    let mut by_instance = Vec::with_capacity(params.n_instances);
    for result in per_instance {
        by_instance.push(result?);
    }

    let mut rows = Vec::with_capacity(params.n_instances * params.sweep_times.len());
    let mut summaries = Vec::with_capacity(params.sweep_times.len());
    for (ti, &sweep_time) in params.sweep_times.iter().enumerate() {
        let values: Vec<f64> = by_instance.iter().map(|p| p[ti]).collect();
        for (instance, &p0) in values.iter().enumerate() {
            rows.push(EnsembleRow {
                sweep_time,
                instance,
                p0,
            });
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let var = values.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / values.len() as f64;
        summaries.push(SweepSummary {
            sweep_time,
            mean_p0: mean,
            std_p0: var.sqrt(),
        });
    }
    Ok(EnsembleResult { rows, summaries })
}
