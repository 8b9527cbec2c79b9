//! The two-step construction of codes with a prescribed hull dimension.
//!
//! Step 1 samples vectors `g_1..g_k` in F_q^m that are linearly independent,
//! mutually orthogonal (`g_i·g_jᵀ = 0` for `i ≠ j`; self products are
//! unconstrained) and whose span has minimum weight at least `d`. The search
//! is sequential rejection sampling: each `g_i` is drawn uniformly until it
//! passes all three checks against the accepted prefix; a vector position
//! that exhausts its attempt budget triggers a restart from `g_1`, and a
//! bounded number of restarts ends in [`ConstructError::SearchExhausted`].
//!
//! Step 2 assembles the generator matrix from the sampled block `B`:
//!
//! * `q` even: `[A | B]` with `A = diag(α_1..α_k)`, where `α_i² = g_i·g_iᵀ`
//!   for the first `t` rows (forcing a zero Gram diagonal there, since
//!   `x = -x` in characteristic 2) and `α_i² + g_i·g_iᵀ ≠ 0` for the rest,
//! * `q ≡ 1 (mod 4)`: `[Δ | B | aB]` with `a² = -1`,
//! * `q ≡ 3 (mod 4)`: `[Δ | B | aB | bB]` with `a² + b² = -1`, `a, b ≠ 0`,
//!
//! where `Δ` is diagonal with exactly `t` zeros (nonzero entries fixed to 1).
//! In every case `G·Gᵀ` is diagonal with exactly `t` zero entries, which
//! pins the hull dimension to `t`, and each block repetition multiplies the
//! distance floor, giving `d`, `2d` and `3d` respectively.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds;
use crate::codes::{CodeError, LinearCode, VerificationReport};
use crate::gf::{as_prime_power, Field, FieldElement};
use crate::linalg::{is_linearly_independent, FieldMatrix, FieldVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(
        "search exhausted after {attempts} attempts and {restarts} restarts \
         (existence condition holds: {gv_holds})"
    )]
    SearchExhausted {
        attempts: u64,
        restarts: u64,
        gv_holds: bool,
    },
    #[error("builder requires an even field size, got q = {q}")]
    WrongCharacteristic { q: u64 },
    #[error("builder requires q ≡ {expected} mod 4, got q = {q}")]
    WrongResidueClass { q: u64, expected: u64 },
    #[error("verifier error: {0}")]
    Verifier(#[from] CodeError),
    #[error("constructed code failed verification: {0}")]
    VerificationFailed(String),
}

/// Budget for the rejection search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_attempts_per_vector: u64,
    pub max_restarts: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_attempts_per_vector: 10_000,
            max_restarts: 100,
        }
    }
}

/// Inputs of one construction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub q: u64,
    pub m: usize,
    pub k: usize,
    pub t: usize,
    pub d: usize,
    pub seed: u64,
    #[serde(default = "default_max_attempts")]
    pub max_attempts_per_vector: u64,
    #[serde(default = "default_max_restarts")]
    pub max_restarts: u64,
}

fn default_max_attempts() -> u64 {
    SearchLimits::default().max_attempts_per_vector
}

fn default_max_restarts() -> u64 {
    SearchLimits::default().max_restarts
}

impl ConstructionParams {
    pub fn new(q: u64, m: usize, k: usize, t: usize, d: usize, seed: u64) -> Self {
        let limits = SearchLimits::default();
        ConstructionParams {
            q,
            m,
            k,
            t,
            d,
            seed,
            max_attempts_per_vector: limits.max_attempts_per_vector,
            max_restarts: limits.max_restarts,
        }
    }

    pub fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_attempts_per_vector: self.max_attempts_per_vector,
            max_restarts: self.max_restarts,
        }
    }

    fn validate(&self) -> Result<(u64, u32), ConstructError> {
        let Some((p, r)) = as_prime_power(self.q) else {
            return Err(ConstructError::InvalidParams(format!(
                "q = {} is not a prime power",
                self.q
            )));
        };
        if !(self.m >= self.k && self.k >= 1) {
            return Err(ConstructError::InvalidParams(format!(
                "need m >= k >= 1, got m = {}, k = {}",
                self.m, self.k
            )));
        }
        if !(1 <= self.d && self.d <= self.m) {
            return Err(ConstructError::InvalidParams(format!(
                "need 1 <= d <= m, got d = {}, m = {}",
                self.d, self.m
            )));
        }
        if self.t > self.k {
            return Err(ConstructError::InvalidParams(format!(
                "need 0 <= t <= k, got t = {}, k = {}",
                self.t, self.k
            )));
        }
        Ok((p, r))
    }
}

/// Which residue class of q drove the assembly, and hence the shape of the
/// generator matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    Even,
    OneMod4,
    ThreeMod4,
}

impl Case {
    pub fn of(q: u64) -> Case {
        if q.is_multiple_of(2) {
            Case::Even
        } else if q % 4 == 1 {
            Case::OneMod4
        } else {
            Case::ThreeMod4
        }
    }

    /// Ambient length of the constructed code.
    pub fn expected_length(self, m: usize, k: usize) -> usize {
        match self {
            Case::Even => m + k,
            Case::OneMod4 => 2 * m + k,
            Case::ThreeMod4 => 3 * m + k,
        }
    }

    /// Distance floor guaranteed by the assembly.
    pub fn guaranteed_distance(self, d: usize) -> usize {
        match self {
            Case::Even => d,
            Case::OneMod4 => 2 * d,
            Case::ThreeMod4 => 3 * d,
        }
    }
}

/// A linearly independent, mutually orthogonal set spanning a space of
/// minimum weight at least the sampled d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalSet {
    field: Field,
    vectors: Vec<FieldVector>,
    self_products: Vec<FieldElement>,
}

impl OrthogonalSet {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vectors(&self) -> &[FieldVector] {
        &self.vectors
    }

    /// g_i·g_iᵀ for each vector; zero entries are allowed.
    pub fn self_products(&self) -> &[FieldElement] {
        &self.self_products
    }

    /// The k×m matrix B whose rows are the sampled vectors.
    pub fn basis_matrix(&self) -> FieldMatrix {
        FieldMatrix::from_rows(&self.field, &self.vectors).expect("uniform rows")
    }
}

/// Counters from the rejection search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub attempts: u64,
    pub restarts: u64,
}

/// Everything produced by one successful construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub code: LinearCode,
    pub case: Case,
    pub seed: u64,
    pub expected_length: usize,
    pub guaranteed_distance: usize,
    pub attempts: u64,
    pub restarts: u64,
    pub report: VerificationReport,
}

/// Uniform draw from 0..q by shifted rejection on the raw generator output.
fn uniform_encoding<R: RngCore>(rng: &mut R, q: u64) -> u64 {
    let shift = q.leading_zeros();
    loop {
        let v = rng.next_u64() >> shift;
        if v < q {
            return v;
        }
    }
}

fn random_vector<R: RngCore>(field: &Field, m: usize, rng: &mut R) -> FieldVector {
    let q = field.order();
    let entries = (0..m)
        .map(|_| field.element(uniform_encoding(rng, q)))
        .collect();
    FieldVector::new(field.clone(), entries)
}

/// Candidate acceptance: independence, orthogonality to the prefix, and the
/// incremental distance check over every new codeword — those with a nonzero
/// coefficient on the candidate, that coefficient normalized to 1.
fn accepts(field: &Field, prefix: &[FieldVector], cand: &FieldVector, d: usize) -> bool {
    let mut rows: Vec<FieldVector> = prefix.to_vec();
    rows.push(cand.clone());
    if !is_linearly_independent(&rows) {
        return false;
    }
    for g in prefix {
        if !cand.dot(g).expect("same field and length").is_zero() {
            return false;
        }
    }
    // q^|prefix| coefficient combinations on the prefix
    let q = field.order();
    let combos = (q as u128).pow(prefix.len() as u32);
    for mut idx in 0..combos {
        let mut word = cand.clone();
        for g in prefix {
            let c = field.element((idx % q as u128) as u64);
            idx /= q as u128;
            if !c.is_zero() {
                word = word.add_scaled(g, c);
            }
        }
        if crate::codes::weight(&word) < d {
            return false;
        }
    }
    true
}

/// Step-1 sampler: sequential rejection with per-vector attempt budgets and
/// global restarts.
pub fn sample_orthogonal_set<R: RngCore>(
    field: &Field,
    m: usize,
    k: usize,
    d: usize,
    rng: &mut R,
    limits: &SearchLimits,
) -> Result<(OrthogonalSet, SearchStats), ConstructError> {
    if !(m >= k && k >= 1) || !(1 <= d && d <= m) {
        return Err(ConstructError::InvalidParams(format!(
            "need m >= k >= 1 and 1 <= d <= m, got m = {m}, k = {k}, d = {d}"
        )));
    }
    let mut stats = SearchStats::default();
    'pass: loop {
        let mut vectors: Vec<FieldVector> = Vec::with_capacity(k);
        while vectors.len() < k {
            let mut tries = 0u64;
            loop {
                if tries == limits.max_attempts_per_vector {
                    if stats.restarts == limits.max_restarts {
                        let gv_holds =
                            bounds::gv_condition(field.order(), m as u64, k as u64, d as u64)
                                .map(|r| r.holds)
                                .unwrap_or(false);
                        return Err(ConstructError::SearchExhausted {
                            attempts: stats.attempts,
                            restarts: stats.restarts,
                            gv_holds,
                        });
                    }
                    stats.restarts += 1;
                    continue 'pass;
                }
                tries += 1;
                stats.attempts += 1;
                let cand = random_vector(field, m, rng);
                if accepts(field, &vectors, &cand, d) {
                    vectors.push(cand);
                    break;
                }
            }
        }
        let self_products = vectors
            .iter()
            .map(|g| g.dot(g).expect("same length"))
            .collect();
        return Ok((
            OrthogonalSet {
                field: field.clone(),
                vectors,
                self_products,
            },
            stats,
        ));
    }
}

/// One trial of the plain i.i.d. scheme: draw all k vectors uniformly and
/// test independence, mutual orthogonality and span distance jointly. This
/// is the statistical counterpart of the lower bound on joint success.
pub fn iid_trial<R: RngCore>(field: &Field, m: usize, k: usize, d: usize, rng: &mut R) -> bool {
    let vectors: Vec<FieldVector> = (0..k).map(|_| random_vector(field, m, rng)).collect();
    if !is_linearly_independent(&vectors) {
        return false;
    }
    for i in 0..k {
        for j in 0..i {
            if !vectors[i].dot(&vectors[j]).expect("same length").is_zero() {
                return false;
            }
        }
    }
    let mat = FieldMatrix::from_rows(field, &vectors).expect("uniform rows");
    let code = LinearCode::new(mat).expect("rows are independent");
    code.min_distance().map(|dist| dist >= d).unwrap_or(false)
}

/// Even case: `[A | B]` with A = diag(α_1..α_k). The first t diagonal Gram
/// entries vanish, the rest do not.
pub fn build_even(
    field: &Field,
    set: &OrthogonalSet,
    t: usize,
) -> Result<FieldMatrix, ConstructError> {
    if field.characteristic() != 2 {
        return Err(ConstructError::WrongCharacteristic { q: field.order() });
    }
    check_t(set, t)?;
    let beta = field.primitive_element();
    // q-1 is odd, so the square of a primitive element is primitive
    let alpha = field.mul(beta, beta);
    let k = set.vectors().len();
    let mut diag = Vec::with_capacity(k);
    for (i, &s) in set.self_products().iter().enumerate() {
        if i < t {
            if s.is_zero() {
                diag.push(field.zero());
            } else {
                // α^ω = g_i·g_iᵀ (minus signs vanish in characteristic 2),
                // so α_i = β^ω satisfies α_i² + g_i·g_iᵀ = 0
                let omega = field
                    .discrete_log(alpha, s)
                    .expect("α is primitive and the target is nonzero");
                diag.push(field.pow(beta, omega));
            }
        } else {
            let alpha_i = field
                .elements()
                .find(|&a| !field.add(field.mul(a, a), s).is_zero())
                .expect("squaring is a bijection, so q-1 choices remain");
            diag.push(alpha_i);
        }
    }
    let a = diagonal(field, &diag);
    let b = set.basis_matrix();
    Ok(a.hstack(&b).expect("row counts match"))
}

/// q ≡ 1 mod 4 case: `[Δ | B | aB]` with a² = -1, so the Gram collapses
/// to Δ².
pub fn build_1mod4(
    field: &Field,
    set: &OrthogonalSet,
    t: usize,
) -> Result<FieldMatrix, ConstructError> {
    if field.order() % 4 != 1 {
        return Err(ConstructError::WrongResidueClass {
            q: field.order(),
            expected: 1,
        });
    }
    check_t(set, t)?;
    let a = field
        .find_sqrt_minus_one()
        .map_err(|e| ConstructError::VerificationFailed(e.to_string()))?;
    let delta = delta_matrix(field, set.vectors().len(), t);
    let b = set.basis_matrix();
    let ab = scale_matrix(field, &b, a);
    Ok(delta
        .hstack(&b)
        .and_then(|m| m.hstack(&ab))
        .expect("row counts match"))
}

/// q ≡ 3 mod 4 case: `[Δ | B | aB | bB]` with a² + b² = -1 and a, b ≠ 0,
/// so every block contributes weight and the Gram again collapses to Δ².
pub fn build_3mod4(
    field: &Field,
    set: &OrthogonalSet,
    t: usize,
) -> Result<FieldMatrix, ConstructError> {
    if field.order() % 4 != 3 {
        return Err(ConstructError::WrongResidueClass {
            q: field.order(),
            expected: 3,
        });
    }
    check_t(set, t)?;
    let (a, b) = field
        .find_sum_two_squares_minus_one()
        .map_err(|e| ConstructError::VerificationFailed(e.to_string()))?;
    let delta = delta_matrix(field, set.vectors().len(), t);
    let bm = set.basis_matrix();
    let abm = scale_matrix(field, &bm, a);
    let bbm = scale_matrix(field, &bm, b);
    Ok(delta
        .hstack(&bm)
        .and_then(|m| m.hstack(&abm))
        .and_then(|m| m.hstack(&bbm))
        .expect("row counts match"))
}

fn check_t(set: &OrthogonalSet, t: usize) -> Result<(), ConstructError> {
    if t > set.vectors().len() {
        return Err(ConstructError::InvalidParams(format!(
            "t = {t} exceeds the set size {}",
            set.vectors().len()
        )));
    }
    Ok(())
}

fn diagonal(field: &Field, entries: &[FieldElement]) -> FieldMatrix {
    let rows: Vec<FieldVector> = entries
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let mut v = vec![field.zero(); entries.len()];
            v[i] = e;
            FieldVector::new(field.clone(), v)
        })
        .collect();
    FieldMatrix::from_rows(field, &rows).expect("uniform rows")
}

/// Diagonal with t zeros then ones.
fn delta_matrix(field: &Field, k: usize, t: usize) -> FieldMatrix {
    let entries: Vec<FieldElement> = (0..k)
        .map(|i| if i < t { field.zero() } else { field.one() })
        .collect();
    diagonal(field, &entries)
}

fn scale_matrix(field: &Field, m: &FieldMatrix, c: FieldElement) -> FieldMatrix {
    let rows: Vec<FieldVector> = m.rows().map(|r| r.scale(c)).collect();
    FieldMatrix::from_rows(field, &rows).expect("uniform rows")
}

/// End-to-end construction: sample the orthogonal set, assemble the
/// generator for the residue class of q, and run the full verifier. The
/// result is deterministic in (params, seed).
pub fn construct(params: &ConstructionParams) -> Result<ConstructionResult, ConstructError> {
    let (p, r) = params.validate()?;
    let field = Field::new(p, r).map_err(|e| ConstructError::InvalidParams(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (set, stats) = sample_orthogonal_set(
        &field,
        params.m,
        params.k,
        params.d,
        &mut rng,
        &params.limits(),
    )?;
    let case = Case::of(params.q);
    let generator = match case {
        Case::Even => build_even(&field, &set, params.t)?,
        Case::OneMod4 => build_1mod4(&field, &set, params.t)?,
        Case::ThreeMod4 => build_3mod4(&field, &set, params.t)?,
    };
    let code = LinearCode::new(generator)?;
    let report = code.verify()?;

    let expected_length = case.expected_length(params.m, params.k);
    let guaranteed_distance = case.guaranteed_distance(params.d);
    if code.length() != expected_length || code.dimension() != params.k {
        return Err(ConstructError::VerificationFailed(format!(
            "expected a [{expected_length}, {}] code, got [{}, {}]",
            params.k,
            code.length(),
            code.dimension()
        )));
    }
    if report.hull_dim_gram != params.t {
        return Err(ConstructError::VerificationFailed(format!(
            "hull dimension {} differs from requested t = {}",
            report.hull_dim_gram, params.t
        )));
    }
    if report.min_distance < guaranteed_distance {
        return Err(ConstructError::VerificationFailed(format!(
            "minimum distance {} below the guarantee {guaranteed_distance}",
            report.min_distance
        )));
    }
    if !report.gram_diagonal || report.gram_diag_zero_count != params.t {
        return Err(ConstructError::VerificationFailed(format!(
            "Gram matrix is not diagonal with exactly {} zeros",
            params.t
        )));
    }
    Ok(ConstructionResult {
        code,
        case,
        seed: params.seed,
        expected_length,
        guaranteed_distance,
        attempts: stats.attempts,
        restarts: stats.restarts,
        report,
    })
}
