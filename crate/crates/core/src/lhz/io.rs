//! JSON interchange for problem instances and compiled encodings.
//!
//! Problem files use one-based logical indices:
//!
//! ```json
//! {"n": 4, "couplings": [[1, 2, 0.3], [2, 4, -0.1]], "fields": [0, 0, 0, 0], "seed": 7}
//! ```
//!
//! Encodings serialize to the same one-based convention for inspection.

use serde::{Deserialize, Serialize};

use super::{encode, LhzEncoding, LhzError, LogicalProblem};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(default)]
    pub couplings: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fields: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<LogicalProblem, LhzError> {
        let mut p = LogicalProblem::new(self.n)?;
        for &(mu, nu, j) in &self.couplings {
            if mu == 0 || nu == 0 {
                return Err(LhzError::BadCouplingIndex { mu, nu });
            }
            p.set_coupling(mu - 1, nu - 1, j)?;
        }
        if let Some(fields) = &self.fields {
            p.set_local_fields(fields)?;
        }
        Ok(p)
    }

    pub fn from_problem(p: &LogicalProblem, seed: Option<u64>) -> Self {
        Self {
            n: p.n(),
            couplings: p
                .pairs()
                .filter(|&(_, _, j)| j != 0.0)
                .map(|(mu, nu, j)| (mu + 1, nu + 1, j))
                .collect(),
            fields: p.has_local_fields().then(|| p.local_fields().to_vec()),
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EncodingFile {
    pub n_logical: usize,
    pub folded_field_spin: bool,
    pub n_physical: usize,
    pub n_ancilla: usize,
    /// Signed local field per physical spin, one-based positionally.
    pub fields: Vec<f64>,
    pub parity_signs: Vec<i8>,
    /// `[physical index, mu, nu]`, all one-based.
    pub pairs: Vec<[usize; 3]>,
    /// Corner and ancilla indices, one-based.
    pub plaquettes: Vec<PlaquetteEntry>,
    /// `[physical index (one-based), signed field]`.
    pub fixed_spins: Vec<(usize, f64)>,
    pub transverse_physical: Vec<f64>,
    pub transverse_ancilla: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaquetteEntry {
    pub corners: [usize; 4],
    pub ancilla: usize,
}

impl EncodingFile {
    pub fn from_encoding(enc: &LhzEncoding) -> Self {
        Self {
            n_logical: enc.n_logical(),
            folded_field_spin: enc.has_folded_field_spin(),
            n_physical: enc.n_physical(),
            n_ancilla: enc.n_ancilla(),
            fields: enc.fields().to_vec(),
            parity_signs: enc.parity_signs().to_vec(),
            pairs: (0..enc.n_physical())
                .filter_map(|i| enc.pair_of(i).map(|(mu, nu)| [i + 1, mu + 1, nu + 1]))
                .collect(),
            plaquettes: enc
                .plaquettes()
                .iter()
                .map(|p| PlaquetteEntry {
                    corners: [
                        p.corners[0] + 1,
                        p.corners[1] + 1,
                        p.corners[2] + 1,
                        p.corners[3] + 1,
                    ],
                    ancilla: p.ancilla + 1,
                })
                .collect(),
            fixed_spins: enc.fixed_spins().iter().map(|&(i, f)| (i + 1, f)).collect(),
            transverse_physical: enc.transverse_physical().to_vec(),
            transverse_ancilla: enc.transverse_ancilla().to_vec(),
        }
    }
}

/// Parse a problem file and compile it in one step.
pub fn encode_from_json(text: &str) -> Result<(LogicalProblem, LhzEncoding), EncodeJsonError> {
    let file: ProblemFile = serde_json::from_str(text)?;
    let problem = file.to_problem()?;
    let encoding = encode(&problem)?;
    Ok((problem, encoding))
}

#[derive(Debug, thiserror::Error)]
pub enum EncodeJsonError {
    #[error("problem file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lhz(#[from] LhzError),
}
