//! Random parity-check ensembles and seeded decodability trials.
//!
//! A random [n, k] code is sampled as a uniform (n-k) x n parity-check
//! matrix, redrawn until it has full row rank. The probability of full rank
//! at the first draw has the closed form prod_{i=0}^{nk-1} (1 - q^(i-n)),
//! which can be cross-checked here by exhaustive enumeration (tiny cases) or
//! Monte Carlo.
//!
//! A decodability trial tests the rank certificate directly: for a target
//! erasure count s and list exponent ell, a violation is an s-column
//! submatrix of the check matrix with rank below s - ell. Codes are sampled
//! on independent, seeded streams (one per code index), so reports are
//! reproducible and insensitive to scheduling.
//!
//! Randomness policy: all sampling reduces to `next_u32` rejection sampling
//! on a ChaCha stream, so results depend only on the seed, the stream
//! layout, and the documented draw order.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::code::saturating_pow;
use crate::gf::{field_make, Fe, Field, GfError};
use crate::matgf::MatGF;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RandError {
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(f64),
    #[error("need 1 <= k < n, got n={n}, k={k}")]
    InvalidShape { n: usize, k: usize },
    #[error("{what} must be at least 1")]
    ZeroCount { what: &'static str },
    #[error("erasure count {s} not in 1..={n}")]
    InvalidErasureCount { s: i64, n: usize },
    #[error("exhaustive enumeration needs {required} matrices, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// How to evaluate the probability that a random (nk) x n matrix over GF(q)
/// has full row rank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FullRankMode {
    /// The exact product formula.
    ExactFormula,
    /// Enumerate all q^(n*nk) matrices; requires that count to fit in 2^24.
    Exhaustive,
    /// Seeded sampling of `trials` matrices.
    MonteCarlo { trials: u64, seed: u64 },
}

/// Budget for [`FullRankMode::Exhaustive`].
pub const EXHAUSTIVE_BUDGET: u128 = 1 << 24;

/// Uniform element of GF(q), by zone rejection on `next_u32` so the draw
/// sequence is a pure function of the stream.
pub fn uniform_element(field: &Field, rng: &mut ChaCha8Rng) -> Fe {
    let q = field.q();
    let zone = (u32::MAX / q) * q;
    loop {
        let raw = rng.next_u32();
        if raw < zone {
            return field.el(raw % q).expect("residue below q");
        }
    }
}

/// Uniform (nk) x n matrix over the field, entries drawn row major.
pub fn sample_parity_check(
    field: &Field,
    n: usize,
    nk: usize,
    seed: u64,
) -> MatGF {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_parity_check_from(field, n, nk, &mut rng)
}

fn sample_parity_check_from(
    field: &Field,
    n: usize,
    nk: usize,
    rng: &mut ChaCha8Rng,
) -> MatGF {
    MatGF::from_fn(field, nk, n, |_, _| uniform_element(field, rng))
}

/// Probability that a uniform (nk) x n matrix over GF(q) has rank nk.
pub fn full_rank_probability(
    q: u32,
    n: usize,
    nk: usize,
    mode: FullRankMode,
) -> Result<f64, RandError> {
    match mode {
        FullRankMode::ExactFormula => {
            let _ = field_make(q)?; // validate q even though only floats are used
            let qf = q as f64;
            let mut p = 1.0;
            for i in 0..nk {
                p *= 1.0 - qf.powi(i as i32 - n as i32);
            }
            Ok(p)
        }
        FullRankMode::Exhaustive => {
            let field = field_make(q)?;
            let cells = n * nk;
            let total = saturating_pow(q, cells as u32);
            if total > EXHAUSTIVE_BUDGET {
                return Err(RandError::BudgetExceeded {
                    required: total,
                    budget: EXHAUSTIVE_BUDGET,
                });
            }
            let mut digits = vec![0u32; cells];
            let mut hits = 0u64;
            let mut count = 0u64;
            loop {
                let m = MatGF::from_fn(&field, nk, n, |i, j| {
                    field.el(digits[i * n + j]).expect("digit below q")
                });
                count += 1;
                if m.rank() == nk {
                    hits += 1;
                }
                let mut i = cells;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < q {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
            debug_assert_eq!(count as u128, total);
            Ok(hits as f64 / count as f64)
        }
        FullRankMode::MonteCarlo { trials, seed } => {
            if trials == 0 {
                return Err(RandError::ZeroCount { what: "trials" });
            }
            let field = field_make(q)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hits = 0u64;
            for _ in 0..trials {
                let m = sample_parity_check_from(&field, n, nk, &mut rng);
                if m.rank() == nk {
                    hits += 1;
                }
            }
            Ok(hits as f64 / trials as f64)
        }
    }
}

/// Parameters of a decodability trial over random [n, k] codes.
///
/// [`TrialParams::derive`] picks the list exponent and erasure count that
/// the random-coding argument certifies for rate k/n and slack epsilon:
/// ell = ceil((1/eps) ((2 - R) log_q 2 + 1)) and s = floor(n - k - eps n),
/// giving list size q^ell. When s <= ell the statement is vacuous (any
/// rank certificate trivially holds), and when s <= 0 no erasure pattern
/// exists to test; both degenerate regimes are flagged, not hidden.
#[derive(Debug, Clone, Serialize)]
pub struct TrialParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Slack used to derive ell and s; for explicitly chosen (s, ell) this
    /// is the implied value (n - k - s) / n.
    pub epsilon: f64,
    /// List exponent: the guaranteed list size is q^ell.
    pub ell: u64,
    /// q^ell when it fits in u128.
    pub list_size: Option<u128>,
    /// Erasure count under test; may be nonpositive for degenerate inputs.
    pub s: i64,
    pub codes: u64,
    pub patterns_per_code: u64,
    pub seed: u64,
}

impl TrialParams {
    pub fn derive(q: u32, n: usize, k: usize, epsilon: f64) -> Result<TrialParams, RandError> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(RandError::InvalidEpsilon(epsilon));
        }
        if k < 1 || k >= n {
            return Err(RandError::InvalidShape { n, k });
        }
        let _ = field_make(q)?;
        let rate = k as f64 / n as f64;
        let log_q_2 = 2f64.ln() / (q as f64).ln();
        let ell = ((1.0 / epsilon) * ((2.0 - rate) * log_q_2 + 1.0)).ceil() as u64;
        let s = ((n - k) as f64 - epsilon * n as f64).floor() as i64;
        Ok(TrialParams {
            q,
            n,
            k,
            epsilon,
            ell,
            list_size: checked_q_pow(q, ell),
            s,
            codes: 10,
            patterns_per_code: 1000,
            seed: 0,
        })
    }

    /// Explicit erasure count and list exponent, bypassing the derivation.
    pub fn explicit(q: u32, n: usize, k: usize, s: i64, ell: u64) -> Result<TrialParams, RandError> {
        if k < 1 || k >= n {
            return Err(RandError::InvalidShape { n, k });
        }
        let _ = field_make(q)?;
        Ok(TrialParams {
            q,
            n,
            k,
            epsilon: (n as f64 - k as f64 - s as f64) / n as f64,
            ell,
            list_size: checked_q_pow(q, ell),
            s,
            codes: 10,
            patterns_per_code: 1000,
            seed: 0,
        })
    }

    pub fn with_codes(mut self, codes: u64) -> TrialParams {
        self.codes = codes;
        self
    }

    pub fn with_patterns_per_code(mut self, patterns: u64) -> TrialParams {
        self.patterns_per_code = patterns;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> TrialParams {
        self.seed = seed;
        self
    }

    /// The certified statement is empty: the rank of s columns can never
    /// drop below s - ell when s <= ell.
    pub fn is_vacuous(&self) -> bool {
        self.s <= self.ell as i64
    }

    /// No erasure pattern of the derived size exists.
    pub fn is_degenerate(&self) -> bool {
        self.s <= 0
    }
}

/// Per-code tally of a trial.
#[derive(Debug, Clone, Serialize)]
pub struct CodeTrialRow {
    pub code_index: u64,
    /// Parity-check draws discarded before one had full row rank.
    pub rejections: u64,
    pub violations: u64,
}

/// Outcome of [`decodability_trial`].
#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub params: TrialParams,
    pub sampled_codes: u64,
    pub full_rank_rejections: u64,
    pub pattern_checks: u64,
    pub violations: u64,
    pub violation_rate: f64,
    pub per_code: Vec<CodeTrialRow>,
}

/// Samples `codes` random codes and, for each, `patterns_per_code` uniform
/// erasure sets of size s, counting rank-certificate violations: patterns
/// whose check-matrix columns have rank below s - ell.
///
/// Code c draws from stream c of the seed, and its pattern draws continue
/// on that stream, so any one code's work is reproducible in isolation.
pub fn decodability_trial(params: &TrialParams) -> Result<TrialReport, RandError> {
    if params.codes == 0 {
        return Err(RandError::ZeroCount { what: "codes" });
    }
    if params.patterns_per_code == 0 {
        return Err(RandError::ZeroCount { what: "patterns_per_code" });
    }
    if params.k < 1 || params.k >= params.n {
        return Err(RandError::InvalidShape { n: params.n, k: params.k });
    }
    if params.s < 1 || params.s > params.n as i64 {
        return Err(RandError::InvalidErasureCount { s: params.s, n: params.n });
    }
    let field = field_make(params.q)?;
    let s = params.s as usize;
    let nk = params.n - params.k;
    let need = params.s - params.ell as i64;

    let mut report = TrialReport {
        params: params.clone(),
        sampled_codes: 0,
        full_rank_rejections: 0,
        pattern_checks: 0,
        violations: 0,
        violation_rate: 0.0,
        per_code: Vec::with_capacity(params.codes as usize),
    };
    let mut positions: Vec<usize> = (0..params.n).collect();
    let mut erased = vec![0usize; s];
    for code_index in 0..params.codes {
        // Reset the scratch permutation so code c's draws are a function of
        // its stream alone, not of earlier codes' shuffling.
        for (i, p) in positions.iter_mut().enumerate() {
            *p = i;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(code_index);
        let mut rejections = 0u64;
        let check = loop {
            let h = sample_parity_check_from(&field, params.n, nk, &mut rng);
            if h.rank() == nk {
                break h;
            }
            rejections += 1;
        };
        let mut violations = 0u64;
        for _ in 0..params.patterns_per_code {
            sample_sorted_subset(&mut positions, &mut erased, &mut rng);
            let rank = check
                .rank_of_columns(&erased)
                .expect("positions are sorted and in range");
            if (rank as i64) < need {
                violations += 1;
            }
        }
        report.sampled_codes += 1;
        report.full_rank_rejections += rejections;
        report.pattern_checks += params.patterns_per_code;
        report.violations += violations;
        report.per_code.push(CodeTrialRow { code_index, rejections, violations });
    }
    report.violation_rate = report.violations as f64 / report.pattern_checks as f64;
    Ok(report)
}

/// Uniform s-subset of positions, written sorted into `out`; partial
/// Fisher-Yates on the scratch slice, one bounded draw per slot.
fn sample_sorted_subset(scratch: &mut [usize], out: &mut [usize], rng: &mut ChaCha8Rng) {
    let n = scratch.len();
    let s = out.len();
    for i in 0..s {
        let j = i + uniform_below((n - i) as u32, rng) as usize;
        scratch.swap(i, j);
    }
    out.copy_from_slice(&scratch[..s]);
    out.sort_unstable();
}

/// Uniform draw from 0..bound via the same zone rejection as elements.
fn uniform_below(bound: u32, rng: &mut ChaCha8Rng) -> u32 {
    debug_assert!(bound > 0);
    let zone = (u32::MAX / bound) * bound;
    loop {
        let raw = rng.next_u32();
        if raw < zone {
            return raw % bound;
        }
    }
}

fn checked_q_pow(q: u32, e: u64) -> Option<u128> {
    if e > u32::MAX as u64 {
        return None;
    }
    let v = saturating_pow(q, e as u32);
    if v == u128::MAX {
        None
    } else {
        Some(v)
    }
}
