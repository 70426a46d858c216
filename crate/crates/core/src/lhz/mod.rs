//! Compilation of all-to-all Ising problems into the odd-parity LHZ layout.
//!
//! A logical problem over `N` spins with pair couplings becomes a triangular
//! arrangement of `K = N(N-1)/2` physical spins (one per logical pair), a
//! bottom row of `N-2` boundary spins pinned by a strong local field, and one
//! ancilla spin per plaquette. Each plaquette of four neighboring spins must
//! end the sweep with an odd number of down spins; the parity signs
//! `(-1)^{mu(nu-mu)}` on the local fields make every consistently encoded
//! configuration satisfy that constraint.
//!
//! Physical indices run bottom-to-top through the triangle: boundary spins
//! first, then the distance-1 row, distance-2 row, and so on, left to right
//! within a row. Logical indices are zero-based internally; the JSON interface
//! in [`io`] is one-based.

pub mod io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest logical system accepted by the brute-force enumerator.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Default magnitude of the pinning field on boundary spins, in units of the
/// plaquette gap.
pub const DEFAULT_FIXED_FIELD: f64 = 5.0;

#[derive(Debug, Error)]
pub enum LhzError {
    #[error("logical problem needs at least 3 spins, got {0}")]
    ProblemTooSmall(usize),
    #[error("brute-force enumeration limited to {limit} spins, got {n}")]
    EnumerationTooLarge { n: usize, limit: usize },
    #[error("coupling ({mu},{nu}) out of range or not upper-triangular")]
    BadCouplingIndex { mu: usize, nu: usize },
    #[error("non-finite value in problem data")]
    NonFinite,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("spin configuration has {got} entries, encoding needs {expected}")]
    ConfigLength { expected: usize, got: usize },
    #[error("decode failure: boundary spin {index} not in its forced orientation")]
    FixedSpinViolation { index: usize },
    #[error("decode failure: plaquette {plaquette} violates odd parity")]
    ParityViolation { plaquette: usize },
}

/// An infinite-range Ising problem: couplings on every logical pair plus
/// optional local longitudinal fields. Energies are in units of the
/// plaquette gap magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalProblem {
    n: usize,
    /// Upper-triangular couplings, indexed by [`Self::pair_index`].
    couplings: Vec<f64>,
    /// Local longitudinal fields, one per logical spin (zero if absent).
    local_fields: Vec<f64>,
    /// Logical transverse fields (carried for completeness; the physical
    /// transverse fields are set on the encoding).
    transverse: Vec<f64>,
}

impl LogicalProblem {
    /// Create a problem with all couplings and fields zero. Problems of any
    /// size can be evaluated and enumerated; encoding needs at least 3 spins.
    pub fn new(n: usize) -> Result<Self, LhzError> {
        if n < 2 {
            return Err(LhzError::ProblemTooSmall(n));
        }
        Ok(Self {
            n,
            couplings: vec![0.0; n * (n - 1) / 2],
            local_fields: vec![0.0; n],
            transverse: vec![1.0; n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_pairs(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Flat index of the ordered pair `(mu, nu)`, `mu < nu`, zero-based,
    /// lexicographic: (0,1),(0,2),...,(0,n-1),(1,2),...
    pub fn pair_index(&self, mu: usize, nu: usize) -> Result<usize, LhzError> {
        if mu >= nu || nu >= self.n {
            return Err(LhzError::BadCouplingIndex { mu, nu });
        }
        Ok(mu * self.n - mu * (mu + 1) / 2 + (nu - mu - 1))
    }

    pub fn set_coupling(&mut self, mu: usize, nu: usize, value: f64) -> Result<(), LhzError> {
        if !value.is_finite() {
            return Err(LhzError::NonFinite);
        }
        let k = self.pair_index(mu, nu)?;
        self.couplings[k] = value;
        Ok(())
    }

    pub fn coupling(&self, mu: usize, nu: usize) -> f64 {
        self.couplings[self.pair_index(mu, nu).expect("valid pair")]
    }

    pub fn set_local_fields(&mut self, fields: &[f64]) -> Result<(), LhzError> {
        if fields.len() != self.n {
            return Err(LhzError::LengthMismatch {
                expected: self.n,
                got: fields.len(),
            });
        }
        if fields.iter().any(|h| !h.is_finite()) {
            return Err(LhzError::NonFinite);
        }
        self.local_fields.copy_from_slice(fields);
        Ok(())
    }

    pub fn local_fields(&self) -> &[f64] {
        &self.local_fields
    }

    pub fn has_local_fields(&self) -> bool {
        self.local_fields.iter().any(|h| *h != 0.0)
    }

    pub fn set_transverse(&mut self, a: &[f64]) -> Result<(), LhzError> {
        if a.len() != self.n {
            return Err(LhzError::LengthMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        self.transverse.copy_from_slice(a);
        Ok(())
    }

    pub fn transverse(&self) -> &[f64] {
        &self.transverse
    }

    /// Iterate `(mu, nu, J)` over all pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |mu| {
            ((mu + 1)..self.n).map(move |nu| (mu, nu, self.coupling(mu, nu)))
        })
    }
}

/// One four-spin plaquette with its central ancilla.
///
/// `corners` are stored in cyclic order, so consecutive entries (wrapping)
/// are plaquette edges and the two skip-one pairs are the diagonals. The
/// ancilla index is a global spin index (`>= n_physical`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plaquette {
    pub corners: [usize; 4],
    pub ancilla: usize,
}

impl Plaquette {
    pub const EDGES: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];
    pub const DIAGONALS: [(usize, usize); 2] = [(0, 2), (1, 3)];
}

/// The compiled physical layout of a logical problem.
#[derive(Debug, Clone, PartialEq)]
pub struct LhzEncoding {
    /// Logical spin count of the encoded problem (includes the auxiliary
    /// spin when local fields were folded in).
    n_logical: usize,
    /// True when the last logical spin is the auxiliary field spin.
    folded_field_spin: bool,
    n_physical: usize,
    n_ancilla: usize,
    /// Signed local fields per physical spin (parity signs included;
    /// boundary spins carry the pinning field).
    fields: Vec<f64>,
    /// Parity sign per physical spin (+1 on boundary spins).
    parity_signs: Vec<i8>,
    /// Logical pair represented by each physical spin; `None` on boundary spins.
    pair_of: Vec<Option<(usize, usize)>>,
    plaquettes: Vec<Plaquette>,
    /// (physical index, signed field) of the pinned boundary spins.
    fixed_spins: Vec<(usize, f64)>,
    /// Transverse field per physical spin.
    transverse_physical: Vec<f64>,
    /// Transverse field per ancilla spin.
    transverse_ancilla: Vec<f64>,
}

/// Parity sign `(-1)^{mu(nu-mu)}` of the zero-based logical pair `(mu, nu)`.
///
/// With this convention the minimal four-logical-spin instance flips exactly
/// one field sign, on the fourth physical spin, and every plaquette of a
/// consistently encoded configuration has odd parity.
pub fn parity_sign(mu: usize, nu: usize) -> i8 {
    if (mu * (nu - mu)) % 2 == 0 {
        1
    } else {
        -1
    }
}

impl LhzEncoding {
    /// A layout with free spins only: no pairs, no plaquettes, no boundary
    /// row. Useful for calibrating dynamics against closed-form cases;
    /// decoding is not meaningful on such layouts.
    pub fn bare(fields: Vec<f64>, transverse: Vec<f64>) -> Self {
        assert_eq!(fields.len(), transverse.len());
        let n = fields.len();
        Self {
            n_logical: 0,
            folded_field_spin: false,
            n_physical: n,
            n_ancilla: 0,
            fields,
            parity_signs: vec![1; n],
            pair_of: vec![None; n],
            plaquettes: Vec::new(),
            fixed_spins: Vec::new(),
            transverse_physical: transverse,
            transverse_ancilla: Vec::new(),
        }
    }

    pub fn n_logical(&self) -> usize {
        self.n_logical
    }

    /// Logical spin count of the original problem (excludes the auxiliary
    /// field spin).
    pub fn n_logical_original(&self) -> usize {
        if self.folded_field_spin {
            self.n_logical - 1
        } else {
            self.n_logical
        }
    }

    pub fn has_folded_field_spin(&self) -> bool {
        self.folded_field_spin
    }

    pub fn n_physical(&self) -> usize {
        self.n_physical
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    /// Total spin count, physical plus ancilla.
    pub fn n_spins(&self) -> usize {
        self.n_physical + self.n_ancilla
    }

    pub fn n_fixed(&self) -> usize {
        self.fixed_spins.len()
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    pub fn parity_signs(&self) -> &[i8] {
        &self.parity_signs
    }

    pub fn pair_of(&self, i: usize) -> Option<(usize, usize)> {
        self.pair_of[i]
    }

    pub fn plaquettes(&self) -> &[Plaquette] {
        &self.plaquettes
    }

    pub fn fixed_spins(&self) -> &[(usize, f64)] {
        &self.fixed_spins
    }

    pub fn transverse_physical(&self) -> &[f64] {
        &self.transverse_physical
    }

    pub fn transverse_ancilla(&self) -> &[f64] {
        &self.transverse_ancilla
    }

    /// Set a uniform transverse field on all physical and ancilla spins.
    pub fn set_uniform_transverse(&mut self, a_site: f64, a_ancilla: f64) {
        self.transverse_physical.iter_mut().for_each(|a| *a = a_site);
        self.transverse_ancilla.iter_mut().for_each(|a| *a = a_ancilla);
    }

    /// Physical index carrying the zero-based logical pair `(mu, nu)`.
    pub fn physical_index(&self, mu: usize, nu: usize) -> usize {
        let n = self.n_logical;
        let n_fixed = n - 2;
        let d = nu - mu;
        // rows of length n-1, n-2, ... stacked above the boundary row
        n_fixed + (d - 1) * n - (d - 1) * d / 2 + mu
    }
}

/// Compile a logical problem into the odd-parity layout.
///
/// Local fields, when present, are folded in as couplings to one extra
/// logical spin whose decoded orientation is gauge-fixed to +1; the physical
/// layout is then that of an `N+1`-spin problem.
///
/// Boundary spins are pinned toward +1: their signed field is
/// `-DEFAULT_FIXED_FIELD`, so in the ground-state convention (positive gap)
/// the forced orientation completes every bottom plaquette with odd parity.
pub fn encode(problem: &LogicalProblem) -> Result<LhzEncoding, LhzError> {
    if problem.n() < 3 {
        return Err(LhzError::ProblemTooSmall(problem.n()));
    }
    let extended;
    let (p, folded) = if problem.has_local_fields() {
        extended = extend_with_field_spin(problem)?;
        (&extended, true)
    } else {
        (problem, false)
    };

    let n = p.n();
    let n_fixed = n - 2;
    let n_pairs = p.n_pairs();
    let n_physical = n_fixed + n_pairs;
    let n_plaquettes = (n - 1) * (n - 2) / 2;

    let mut fields = vec![0.0; n_physical];
    let mut signs = vec![1i8; n_physical];
    let mut pair_of = vec![None; n_physical];
    let mut fixed_spins = Vec::with_capacity(n_fixed);

    for i in 0..n_fixed {
        fields[i] = -DEFAULT_FIXED_FIELD;
        fixed_spins.push((i, -DEFAULT_FIXED_FIELD));
    }

    // Assign pair spins row by row, bottom to top.
    let mut enc = LhzEncoding {
        n_logical: n,
        folded_field_spin: folded,
        n_physical,
        n_ancilla: n_plaquettes,
        fields: Vec::new(),
        parity_signs: Vec::new(),
        pair_of: Vec::new(),
        plaquettes: Vec::new(),
        fixed_spins: Vec::new(),
        transverse_physical: vec![1.0; n_physical],
        transverse_ancilla: vec![1.0; n_plaquettes],
    };
    for (mu, nu, j) in p.pairs() {
        let i = enc.physical_index(mu, nu);
        let s = parity_sign(mu, nu);
        fields[i] = f64::from(s) * j;
        signs[i] = s;
        pair_of[i] = Some((mu, nu));
    }

    // Plaquettes, corners in cyclic order. Bottom row first: each boundary
    // spin completes the triangle of pairs among (a, a+1, a+2). Interior
    // diamonds then stack by increasing row.
    let mut plaquettes = Vec::with_capacity(n_plaquettes);
    for a in 0..n_fixed {
        let corners = [
            a,
            enc.physical_index(a, a + 1),
            enc.physical_index(a, a + 2),
            enc.physical_index(a + 1, a + 2),
        ];
        plaquettes.push(Plaquette {
            corners,
            ancilla: n_physical + plaquettes.len(),
        });
    }
    for d in 2..(n - 1) {
        for a in 0..(n - 1 - d) {
            let b = a + d;
            let corners = [
                enc.physical_index(a, b),
                enc.physical_index(a + 1, b),
                enc.physical_index(a + 1, b + 1),
                enc.physical_index(a, b + 1),
            ];
            plaquettes.push(Plaquette {
                corners,
                ancilla: n_physical + plaquettes.len(),
            });
        }
    }
    debug_assert_eq!(plaquettes.len(), n_plaquettes);

    enc.fields = fields;
    enc.parity_signs = signs;
    enc.pair_of = pair_of;
    enc.plaquettes = plaquettes;
    enc.fixed_spins = fixed_spins;
    Ok(enc)
}

fn extend_with_field_spin(problem: &LogicalProblem) -> Result<LogicalProblem, LhzError> {
    let n = problem.n();
    let mut ext = LogicalProblem::new(n + 1)?;
    for (mu, nu, j) in problem.pairs() {
        ext.set_coupling(mu, nu, j)?;
    }
    for (nu, h) in problem.local_fields().iter().enumerate() {
        ext.set_coupling(nu, n, *h)?;
    }
    Ok(ext)
}

/// A classical configuration of all physical and ancilla spins,
/// `+1` for the +1 eigenvalue of sigma_z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinConfiguration {
    pub bits: Vec<i8>,
}

impl SpinConfiguration {
    /// Decode a basis-state index: bit `i` clear means spin `i` is +1.
    pub fn from_basis_index(index: usize, n_spins: usize) -> Self {
        let bits = (0..n_spins)
            .map(|i| if index >> i & 1 == 0 { 1 } else { -1 })
            .collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// The physical configuration induced by a logical one: pair spins carry the
/// signed relative orientation, boundary spins sit at +1, and each ancilla
/// takes the orientation that zeroes its plaquette stabilizer.
pub fn induced_configuration(enc: &LhzEncoding, logical: &[i8]) -> Result<SpinConfiguration, LhzError> {
    if logical.len() != enc.n_logical() {
        return Err(LhzError::LengthMismatch {
            expected: enc.n_logical(),
            got: logical.len(),
        });
    }
    let mut bits = vec![1i8; enc.n_spins()];
    for i in 0..enc.n_physical() {
        if let Some((mu, nu)) = enc.pair_of(i) {
            bits[i] = enc.parity_signs()[i] * logical[mu] * logical[nu];
        }
    }
    for p in enc.plaquettes() {
        let sum: i32 = p.corners.iter().map(|&c| i32::from(bits[c])).sum();
        debug_assert!(sum == 2 || sum == -2, "induced plaquette not odd parity");
        bits[p.ancilla] = if sum > 0 { -1 } else { 1 };
    }
    Ok(SpinConfiguration { bits })
}

/// Recover the logical configuration from a physical one.
///
/// Fails if a boundary spin is out of its forced orientation or any plaquette
/// has even parity, naming the first violated plaquette. The gauge is fixed
/// by the first logical spin (+1), or by the auxiliary field spin when local
/// fields were folded into the encoding.
pub fn decode(config: &SpinConfiguration, enc: &LhzEncoding) -> Result<Vec<i8>, LhzError> {
    if config.len() != enc.n_spins() {
        return Err(LhzError::ConfigLength {
            expected: enc.n_spins(),
            got: config.len(),
        });
    }
    for &(i, _) in enc.fixed_spins() {
        if config.bits[i] != 1 {
            return Err(LhzError::FixedSpinViolation { index: i });
        }
    }
    for (k, p) in enc.plaquettes().iter().enumerate() {
        let sum: i32 = p.corners.iter().map(|&c| i32::from(config.bits[c])).sum();
        if sum != 2 && sum != -2 {
            return Err(LhzError::ParityViolation { plaquette: k });
        }
    }

    let n = enc.n_logical();
    let mut logical = vec![1i8; n];
    for nu in 1..n {
        let i = enc.physical_index(0, nu);
        logical[nu] = enc.parity_signs()[i] * config.bits[i];
    }
    // Odd parity on every plaquette guarantees global pair consistency.
    debug_assert!((0..enc.n_physical()).all(|i| match enc.pair_of(i) {
        Some((mu, nu)) => enc.parity_signs()[i] * config.bits[i] == logical[mu] * logical[nu],
        None => true,
    }));

    if enc.has_folded_field_spin() {
        if logical[n - 1] == -1 {
            logical.iter_mut().for_each(|s| *s = -*s);
        }
        logical.pop();
    }
    Ok(logical)
}

/// Classical energy of a logical configuration.
pub fn logical_energy(logical: &[i8], problem: &LogicalProblem) -> f64 {
    let mut e = 0.0;
    for (nu, h) in problem.local_fields().iter().enumerate() {
        e += h * f64::from(logical[nu]);
    }
    for (mu, nu, j) in problem.pairs() {
        e += j * f64::from(logical[mu]) * f64::from(logical[nu]);
    }
    e
}

/// Exhaustive ground-state search over all `2^N` logical configurations.
///
/// Ties break to the lexicographically smallest configuration, reading
/// spins first-to-last with +1 ordered before -1.
pub fn brute_force_optimum(problem: &LogicalProblem) -> Result<(Vec<i8>, f64), LhzError> {
    let n = problem.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(LhzError::EnumerationTooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    // Walk configurations in lexicographic order, updating the energy
    // incrementally on every flipped spin of the binary increment. Candidate
    // minima are re-evaluated from scratch so accumulated round-off never
    // enters the reported energy or the tie-break.
    let mut state = vec![1i8; n];
    let mut energy = logical_energy(&state, problem);
    let mut best = state.clone();
    let mut best_energy = energy;
    for c in 1u64..(1u64 << n) {
        let changed = c ^ (c - 1);
        for bit in 0..n {
            if changed >> bit & 1 == 1 {
                let k = n - 1 - bit;
                energy += flip_delta(&state, problem, k);
                state[k] = -state[k];
            }
        }
        if energy < best_energy + 1e-9 {
            let exact = logical_energy(&state, problem);
            energy = exact;
            if exact < best_energy {
                best_energy = exact;
                best.copy_from_slice(&state);
            }
        }
    }
    Ok((best, best_energy))
}

/// Energy change from flipping logical spin `k`.
fn flip_delta(state: &[i8], problem: &LogicalProblem, k: usize) -> f64 {
    let mut local = problem.local_fields()[k];
    for nu in 0..problem.n() {
        if nu != k {
            let (a, b) = if k < nu { (k, nu) } else { (nu, k) };
            local += problem.coupling(a, b) * f64::from(state[nu]);
        }
    }
    -2.0 * f64::from(state[k]) * local
}

/// Evaluate both sides of the encoding energy identity: the physical field
/// energy of the induced configuration (pair spins only) and the logical
/// interaction energy. The two must agree for every logical configuration.
pub fn encoded_energy_identity_check(
    enc: &LhzEncoding,
    problem: &LogicalProblem,
    logical: &[i8],
) -> Result<(f64, f64), LhzError> {
    if logical.len() != problem.n() {
        return Err(LhzError::LengthMismatch {
            expected: problem.n(),
            got: logical.len(),
        });
    }
    let mut ext = logical.to_vec();
    if enc.has_folded_field_spin() {
        ext.push(1);
    }
    let config = induced_configuration(enc, &ext)?;
    let physical: f64 = (0..enc.n_physical())
        .filter(|&i| enc.pair_of(i).is_some())
        .map(|i| enc.fields()[i] * f64::from(config.bits[i]))
        .sum();
    Ok((physical, logical_energy(logical, problem)))
}

#[cfg(test)]
mod tests;
