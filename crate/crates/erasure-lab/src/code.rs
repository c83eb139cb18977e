//! Linear codes and their erasure list-decoding structure.
//!
//! A code is given by a full-rank k x n generator matrix. The central
//! quantities are the generalized Hamming weights d_r (the smallest support
//! of an r-dimensional subcode), computed exactly by enumerating canonical
//! bases of all r-dimensional message subspaces, and erasure list
//! decodability: a code handles s erasures with list size L exactly when for
//! every kept coordinate set of size n - s at most L codewords agree on it.
//!
//! For linear codes the codewords consistent with a partially erased word
//! form a coset of the codewords vanishing on the kept set, so the count
//! never depends on which word was sent and three equivalent tests exist:
//!
//! * `Definition`: enumerate kept sets and count vanishing codewords.
//! * `Ghw`: compare s against d_r - 1 for r = floor(log_q L) + 1.
//! * `Rank`: require every s-column submatrix of the parity check to have
//!   rank at least s - floor(log_q L).
//!
//! All searches respect explicit enumeration budgets and fail loudly when
//! the budget would be exceeded.

use itertools::Itertools;
use thiserror::Error;

use crate::gf::{field_make, Fe, Field, GfError};
use crate::matgf::{parse_numbers, MatError, MatGF};

/// Default cap on enumeration work (subspace counts, kept-set scans).
pub const DEFAULT_ENUM_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator must have full row rank ({rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("subcode dimension {r} outside 1..={k}")]
    InvalidSubcodeDim { r: usize, k: usize },
    #[error("erasure count {s} exceeds length {n}")]
    InvalidErasureCount { s: usize, n: usize },
    #[error("list cap must be at least 1")]
    InvalidListCap,
    #[error("enumeration needs {required} steps, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("message length {got} does not match dimension {k}")]
    MessageLength { got: usize, k: usize },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// One generalized Hamming weight together with a witness subcode.
#[derive(Debug, Clone)]
pub struct GhwResult {
    pub r: usize,
    pub d_r: usize,
    /// Basis of a subcode of dimension r whose support has size exactly d_r.
    pub witness: MatGF,
}

/// Which of the three equivalent decodability tests to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodabilityMethod {
    Definition,
    Ghw,
    Rank,
}

/// A partially erased received word: the kept coordinate positions (sorted),
/// the symbols seen there, and the largest list the caller will accept.
#[derive(Debug, Clone)]
pub struct ErasureQuery {
    kept: Vec<usize>,
    values: Vec<Fe>,
    list_cap: u128,
}

impl ErasureQuery {
    pub fn new(kept: Vec<usize>, values: Vec<Fe>, list_cap: u128) -> Result<Self, CodeError> {
        if list_cap < 1 {
            return Err(CodeError::InvalidListCap);
        }
        if kept.len() != values.len() {
            return Err(CodeError::Parse {
                line: 0,
                reason: format!(
                    "{} kept positions but {} values",
                    kept.len(),
                    values.len()
                ),
            });
        }
        for w in kept.windows(2) {
            if w[0] >= w[1] {
                return Err(MatError::UnsortedSelection.into());
            }
        }
        Ok(ErasureQuery { kept, values, list_cap })
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn values(&self) -> &[Fe] {
        &self.values
    }

    pub fn list_cap(&self) -> u128 {
        self.list_cap
    }
}

/// A linear [n, k] code over GF(q), held as a full-rank generator plus the
/// matching parity check (its kernel basis).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCode {
    gen: MatGF,
    check: MatGF,
    n: usize,
    k: usize,
}

impl LinearCode {
    /// Wraps a generator matrix; rows must be independent and nonempty.
    pub fn from_generator(gen: MatGF) -> Result<LinearCode, CodeError> {
        let rank = gen.rank();
        if gen.rows() == 0 || rank < gen.rows() {
            return Err(CodeError::RankDeficient { rank, rows: gen.rows() });
        }
        let check = gen.kernel_basis();
        let (n, k) = (gen.cols(), gen.rows());
        Ok(LinearCode { gen, check, n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn q(&self) -> u32 {
        self.field().q()
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator(&self) -> &MatGF {
        &self.gen
    }

    /// Parity check: rows span the dual, `check . c = 0` exactly on codewords.
    pub fn check_matrix(&self) -> &MatGF {
        &self.check
    }

    pub fn encode(&self, msg: &[Fe]) -> Result<Vec<Fe>, CodeError> {
        if msg.len() != self.k {
            return Err(CodeError::MessageLength { got: msg.len(), k: self.k });
        }
        Ok(self.gen.mul_row_vec(msg)?)
    }

    pub fn contains(&self, word: &[Fe]) -> Result<bool, CodeError> {
        Ok(self.check.mul_col_vec(word)?.iter().all(|e| e.is_zero()))
    }

    /// q^k, saturating at u128::MAX.
    pub fn codeword_count(&self) -> u128 {
        saturating_pow(self.q(), self.k as u32)
    }

    /// All codewords, in lexicographic message order.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<Fe>> + '_ {
        MessageIter::new(self.field().clone(), self.k)
            .map(|m| self.encode(&m).expect("message has length k"))
    }

    /// The dual code. Fails for the full space, whose dual has dimension 0.
    pub fn dual(&self) -> Result<LinearCode, CodeError> {
        LinearCode::from_generator(self.check.clone())
    }

    /// d_r with the default enumeration budget.
    pub fn ghw(&self, r: usize) -> Result<GhwResult, CodeError> {
        self.ghw_with_budget(r, DEFAULT_ENUM_BUDGET)
    }

    /// Exact d_r by enumerating every r-dimensional message subspace once,
    /// via canonical RREF bases: choose pivot columns, then sweep all values
    /// of the free entries. The witness is the subcode with the smallest
    /// support, ties broken by lexicographically smallest basis matrix, so
    /// the result does not depend on enumeration internals.
    pub fn ghw_with_budget(&self, r: usize, budget: u128) -> Result<GhwResult, CodeError> {
        if r < 1 || r > self.k {
            return Err(CodeError::InvalidSubcodeDim { r, k: self.k });
        }
        let needed = gaussian_binomial(self.k, r, self.q()).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(CodeError::BudgetExceeded { required: needed, budget });
        }
        let f = self.field().clone();
        let q = f.q();
        let (n, k) = (self.n, self.k);

        let mut best_d = n + 1;
        let mut best_b: Option<Vec<Fe>> = None;
        let mut best_span: Vec<Fe> = Vec::new();

        // Scratch reused across all subspaces.
        let mut b = vec![Fe::ZERO; r * k];
        let mut span = vec![Fe::ZERO; r * n];
        let mut support = vec![false; n];

        for pivots in (0..k).combinations(r) {
            // Free slots of the canonical form: to the right of each row's
            // pivot, excluding pivot columns.
            let mut free: Vec<(usize, usize)> = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                for j in p + 1..k {
                    if !pivots.contains(&j) {
                        free.push((i, j));
                    }
                }
            }
            let mut vals = vec![0u32; free.len()];
            loop {
                // Materialize B.
                for x in b.iter_mut() {
                    *x = Fe::ZERO;
                }
                for (i, &p) in pivots.iter().enumerate() {
                    b[i * k + p] = Fe::ONE;
                }
                for (slot, &(i, j)) in free.iter().enumerate() {
                    b[i * k + j] = f.el(vals[slot]).expect("value below q");
                }
                // span = B . G, one row at a time.
                for i in 0..r {
                    let row = &mut span[i * n..(i + 1) * n];
                    row.copy_from_slice(self.gen.row(pivots[i]));
                    for j in 0..k {
                        let c = b[i * k + j];
                        if j == pivots[i] || c.is_zero() {
                            continue;
                        }
                        let grow = self.gen.row(j);
                        for (t, cell) in row.iter_mut().enumerate() {
                            *cell = f.add(*cell, f.mul(c, grow[t]));
                        }
                    }
                }
                support.iter_mut().for_each(|s| *s = false);
                for i in 0..r {
                    for t in 0..n {
                        if !span[i * n + t].is_zero() {
                            support[t] = true;
                        }
                    }
                }
                let d = support.iter().filter(|&&s| s).count();
                if d < best_d
                    || (d == best_d && best_b.as_deref().is_some_and(|bb| b[..] < *bb))
                {
                    best_d = d;
                    best_b = Some(b.clone());
                    best_span.clone_from(&span);
                }
                // Advance the odometer, last slot fastest.
                let mut slot = free.len();
                loop {
                    if slot == 0 {
                        break;
                    }
                    slot -= 1;
                    vals[slot] += 1;
                    if vals[slot] < q {
                        break;
                    }
                    vals[slot] = 0;
                }
                if free.is_empty() || (slot == 0 && vals[0] == 0) {
                    break;
                }
            }
        }
        let witness_rows: Vec<Vec<Fe>> = (0..r)
            .map(|i| best_span[i * n..(i + 1) * n].to_vec())
            .collect();
        let witness = MatGF::from_rows(self.field(), &witness_rows)?;
        Ok(GhwResult { r, d_r: best_d, witness })
    }

    /// Largest number of codewords vanishing outside any s erased positions,
    /// i.e. max over kept sets T of size n - s of |{c : c restricted to T
    /// is 0}|. Budgeted by kept-set count times codeword count.
    pub fn max_consistent_count(&self, s: usize, budget: u128) -> Result<u128, CodeError> {
        if s > self.n {
            return Err(CodeError::InvalidErasureCount { s, n: self.n });
        }
        let sets = binomial(self.n, self.n - s).unwrap_or(u128::MAX);
        let work = sets.checked_mul(self.codeword_count()).unwrap_or(u128::MAX);
        if work > budget {
            return Err(CodeError::BudgetExceeded { required: work, budget });
        }
        let words: Vec<Vec<Fe>> = self.codewords().collect();
        let mut best = 0u128;
        for kept in (0..self.n).combinations(self.n - s) {
            let count = words
                .iter()
                .filter(|w| kept.iter().all(|&t| w[t].is_zero()))
                .count() as u128;
            best = best.max(count);
        }
        Ok(best)
    }

    pub fn is_erasure_list_decodable(
        &self,
        s: usize,
        l: u128,
        method: DecodabilityMethod,
    ) -> Result<bool, CodeError> {
        self.is_erasure_list_decodable_with_budget(s, l, method, DEFAULT_ENUM_BUDGET)
    }

    pub fn is_erasure_list_decodable_with_budget(
        &self,
        s: usize,
        l: u128,
        method: DecodabilityMethod,
        budget: u128,
    ) -> Result<bool, CodeError> {
        if s > self.n {
            return Err(CodeError::InvalidErasureCount { s, n: self.n });
        }
        if l < 1 {
            return Err(CodeError::InvalidListCap);
        }
        match method {
            DecodabilityMethod::Definition => {
                let sets = binomial(self.n, self.n - s).unwrap_or(u128::MAX);
                let work = sets.checked_mul(self.codeword_count()).unwrap_or(u128::MAX);
                if work > budget {
                    return Err(CodeError::BudgetExceeded { required: work, budget });
                }
                let words: Vec<Vec<Fe>> = self.codewords().collect();
                for kept in (0..self.n).combinations(self.n - s) {
                    let mut count: u128 = 0;
                    for w in &words {
                        if kept.iter().all(|&t| w[t].is_zero()) {
                            count += 1;
                            if count > l {
                                return Ok(false);
                            }
                        }
                    }
                }
                Ok(true)
            }
            DecodabilityMethod::Ghw => {
                let r = floor_log(self.q(), l) as usize + 1;
                if r > self.k {
                    return Ok(true);
                }
                Ok(self.ghw_with_budget(r, budget)?.d_r > s)
            }
            DecodabilityMethod::Rank => {
                let e = floor_log(self.q(), l);
                if (s as u128) <= e as u128 {
                    return Ok(true);
                }
                let need = s as isize - e as isize;
                let sets = binomial(self.n, s).unwrap_or(u128::MAX);
                if sets > budget {
                    return Err(CodeError::BudgetExceeded { required: sets, budget });
                }
                for erased in (0..self.n).combinations(s) {
                    let rank = self.check.rank_of_columns(&erased)?;
                    if (rank as isize) < need {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Largest s such that every pattern of s erasures still leaves at most
    /// L consistent codewords. Equals d_r - 1 for r = floor(log_q L) + 1;
    /// when even the whole code fits in the list (r > k) every pattern is
    /// fine and the radius is n.
    pub fn erasure_radius(&self, l: u128) -> Result<usize, CodeError> {
        self.erasure_radius_with_budget(l, DEFAULT_ENUM_BUDGET)
    }

    pub fn erasure_radius_with_budget(&self, l: u128, budget: u128) -> Result<usize, CodeError> {
        if l < 1 {
            return Err(CodeError::InvalidListCap);
        }
        let r = floor_log(self.q(), l) as usize + 1;
        if r > self.k {
            return Ok(self.n);
        }
        Ok(self.ghw_with_budget(r, budget)?.d_r - 1)
    }

    /// Serializes as `q n k` plus the k generator rows.
    pub fn to_code_file(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.q(), self.n, self.k);
        for i in 0..self.k {
            let line: Vec<String> = self.gen.row(i).iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the `to_code_file` format; the generator must be full rank.
    pub fn from_code_file(text: &str) -> Result<LinearCode, CodeError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or(CodeError::Parse {
            line: 1,
            reason: "empty input".into(),
        })?;
        let head = parse_numbers(header, ln + 1)?;
        let [q, n, k] = head[..] else {
            return Err(CodeError::Parse {
                line: ln + 1,
                reason: "header must be `q n k`".into(),
            });
        };
        if q > u32::MAX as u64 || n > 1 << 20 || k > 1 << 20 || n * k > 1 << 24 {
            return Err(CodeError::Parse {
                line: ln + 1,
                reason: "header dimensions out of range".into(),
            });
        }
        let field = field_make(q as u32)?;
        let mut idx = Vec::with_capacity((n * k) as usize);
        for _ in 0..k {
            let (ln, line) = lines.next().ok_or(CodeError::Parse {
                line: 0,
                reason: format!("expected {k} generator rows"),
            })?;
            let vals = parse_numbers(line, ln + 1)?;
            if vals.len() != n as usize {
                return Err(CodeError::Parse {
                    line: ln + 1,
                    reason: format!("expected {n} entries, found {}", vals.len()),
                });
            }
            for v in vals {
                if v >= q {
                    return Err(CodeError::Parse {
                        line: ln + 1,
                        reason: format!("element index {v} out of range for GF({q})"),
                    });
                }
                idx.push(v as u32);
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(CodeError::Parse {
                line: ln + 1,
                reason: "trailing content after last generator row".into(),
            });
        }
        let gen = MatGF::from_indices(&field, k as usize, n as usize, &idx)?;
        LinearCode::from_generator(gen)
    }
}

/// Sorted union of the row supports; for independent rows this is the
/// support of the spanned subcode, since a coordinate where some basis row
/// is nonzero is nonzero on some span element.
pub fn subcode_support(basis: &MatGF) -> Vec<usize> {
    (0..basis.cols())
        .filter(|&j| (0..basis.rows()).any(|i| !basis.get(i, j).is_zero()))
        .collect()
}

/// Messages of length k over the field, in lexicographic order (first
/// coordinate most significant).
struct MessageIter {
    field: Field,
    digits: Vec<u32>,
    done: bool,
}

impl MessageIter {
    fn new(field: Field, k: usize) -> MessageIter {
        MessageIter { field, digits: vec![0; k], done: false }
    }
}

impl Iterator for MessageIter {
    type Item = Vec<Fe>;

    fn next(&mut self) -> Option<Vec<Fe>> {
        if self.done {
            return None;
        }
        let out: Vec<Fe> = self
            .digits
            .iter()
            .map(|&d| self.field.el(d).expect("digit below q"))
            .collect();
        let q = self.field.q();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < q {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// floor(log_q l) for l >= 1: the largest e with q^e <= l.
pub fn floor_log(q: u32, l: u128) -> u32 {
    debug_assert!(l >= 1);
    let q = q as u128;
    let mut e = 0;
    let mut acc: u128 = 1;
    while acc <= l / q {
        acc *= q;
        e += 1;
    }
    e
}

/// Number of r-dimensional subspaces of F_q^k; None on u128 overflow.
/// Computed by the Pascal-style recurrence to stay in integers.
pub fn gaussian_binomial(k: usize, r: usize, q: u32) -> Option<u128> {
    if r > k {
        return Some(0);
    }
    let q = q as u128;
    // row[j] holds the count for (i, j) as i grows.
    let mut row = vec![0u128; r + 1];
    row[0] = 1;
    for _ in 1..=k {
        for j in (1..=r).rev() {
            // [i, j] = [i-1, j-1] + q^j [i-1, j]
            let qj = checked_pow(q, j as u32)?;
            row[j] = row[j - 1].checked_add(qj.checked_mul(row[j])?)?;
        }
    }
    Some(row[r])
}

/// Binomial coefficient in u128; None on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

fn checked_pow(base: u128, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub(crate) fn saturating_pow(q: u32, e: u32) -> u128 {
    checked_pow(q as u128, e).unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;
    use itertools::Itertools;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> Field {
        field_make(q).unwrap()
    }

    fn hamming_7_4() -> LinearCode {
        let f2 = f(2);
        let gen = MatGF::from_indices(
            &f2,
            4,
            7,
            &[
                1, 0, 0, 0, 0, 1, 1, //
                0, 1, 0, 0, 1, 0, 1, //
                0, 0, 1, 0, 1, 1, 0, //
                0, 0, 0, 1, 1, 1, 1,
            ],
        )
        .unwrap();
        LinearCode::from_generator(gen).unwrap()
    }

    fn repetition(q: u32, n: usize) -> LinearCode {
        let fq = f(q);
        let gen = MatGF::from_fn(&fq, 1, n, |_, _| Fe::ONE);
        LinearCode::from_generator(gen).unwrap()
    }

    fn rs_gf5_4_2() -> LinearCode {
        let f5 = f(5);
        let gen = MatGF::from_indices(&f5, 2, 4, &[1, 1, 1, 1, 0, 1, 2, 3]).unwrap();
        LinearCode::from_generator(gen).unwrap()
    }

    /// Independent oracle: minimum union support over all r-subsets of
    /// nonzero codewords that span r dimensions. Visits subcodes many times,
    /// which is fine for a cross-check.
    fn ghw_oracle(code: &LinearCode, r: usize) -> usize {
        let nonzero: Vec<Vec<Fe>> = code
            .codewords()
            .filter(|w| w.iter().any(|e| !e.is_zero()))
            .collect();
        let fq = code.field().clone();
        let mut best = usize::MAX;
        for sub in nonzero.iter().combinations(r) {
            let rows: Vec<Vec<Fe>> = sub.iter().map(|w| (*w).clone()).collect();
            let m = MatGF::from_rows(&fq, &rows).unwrap();
            if m.rank() != r {
                continue;
            }
            let supp = (0..code.n())
                .filter(|&t| sub.iter().any(|w| !w[t].is_zero()))
                .count();
            best = best.min(supp);
        }
        best
    }

    #[test]
    fn generator_must_be_full_rank() {
        let f2 = f(2);
        let gen = MatGF::from_indices(&f2, 2, 3, &[1, 1, 0, 1, 1, 0]).unwrap();
        assert_eq!(
            LinearCode::from_generator(gen).unwrap_err(),
            CodeError::RankDeficient { rank: 1, rows: 2 }
        );
        let empty = MatGF::zero(&f2, 0, 3);
        assert!(matches!(
            LinearCode::from_generator(empty).unwrap_err(),
            CodeError::RankDeficient { rank: 0, rows: 0 }
        ));
    }

    #[test]
    fn check_matrix_annihilates_exactly_the_code() {
        for code in [hamming_7_4(), repetition(3, 4), rs_gf5_4_2()] {
            let h = code.check_matrix();
            assert_eq!(h.rows(), code.n() - code.k());
            assert_eq!(h.rank(), code.n() - code.k());
            for w in code.codewords() {
                assert!(code.contains(&w).unwrap());
            }
            // A non-codeword must be rejected; perturb one coordinate of
            // some codeword by adding 1 repeatedly until it leaves the code.
            let fq = code.field().clone();
            let mut w = code.codewords().nth(1).unwrap();
            w[0] = fq.add(w[0], Fe::ONE);
            assert_eq!(
                code.contains(&w).unwrap(),
                false,
                "perturbed word unexpectedly stayed in the code"
            );
        }
    }

    #[test]
    fn full_space_has_empty_check() {
        let f3 = f(3);
        let code = LinearCode::from_generator(MatGF::identity(&f3, 3)).unwrap();
        assert_eq!(code.check_matrix().rows(), 0);
        assert!(code.contains(&[Fe::ONE, Fe::ZERO, Fe::ONE]).unwrap());
        assert!(code.dual().is_err());
    }

    #[test]
    fn dual_of_dual_is_the_original_code() {
        for code in [hamming_7_4(), repetition(3, 4), rs_gf5_4_2()] {
            let dd = code.dual().unwrap().dual().unwrap();
            assert_eq!(dd.n(), code.n());
            assert_eq!(dd.k(), code.k());
            let mut a: Vec<Vec<Fe>> = code.codewords().collect();
            let mut b: Vec<Vec<Fe>> = dd.codewords().collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn hamming_ghw_hierarchy() {
        // Brute-force oracle agrees and gives the classic values.
        let code = hamming_7_4();
        let expected = [3usize, 5, 6, 7];
        for r in 1..=4 {
            let got = code.ghw(r).unwrap();
            assert_eq!(got.d_r, expected[r - 1]);
            assert_eq!(got.d_r, ghw_oracle(&code, r));
            // Witness checks: r independent rows inside the code with
            // support of exactly d_r.
            assert_eq!(got.witness.rank(), r);
            assert_eq!(subcode_support(&got.witness).len(), got.d_r);
            for i in 0..r {
                assert!(code.contains(got.witness.row(i)).unwrap());
            }
        }
    }

    #[test]
    fn rs_and_full_space_ghw() {
        let code = rs_gf5_4_2();
        assert_eq!(code.ghw(1).unwrap().d_r, 3);
        assert_eq!(code.ghw(2).unwrap().d_r, 4);
        assert_eq!(ghw_oracle(&code, 1), 3);
        assert_eq!(ghw_oracle(&code, 2), 4);

        let f2 = f(2);
        let full = LinearCode::from_generator(MatGF::identity(&f2, 4)).unwrap();
        assert_eq!(full.ghw(2).unwrap().d_r, 2);
        assert_eq!(full.ghw(1).unwrap().d_r, 1);
    }

    #[test]
    fn ghw_rejects_bad_dimension_and_budget() {
        let code = hamming_7_4();
        assert_eq!(
            code.ghw(0).unwrap_err(),
            CodeError::InvalidSubcodeDim { r: 0, k: 4 }
        );
        assert_eq!(
            code.ghw(5).unwrap_err(),
            CodeError::InvalidSubcodeDim { r: 5, k: 4 }
        );
        // 35 two-dimensional subspaces of F_2^4 exceed a budget of 10.
        assert_eq!(
            code.ghw_with_budget(2, 10).unwrap_err(),
            CodeError::BudgetExceeded { required: 35, budget: 10 }
        );
    }

    #[test]
    fn ghw_strictly_increases() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for q in [2u32, 3] {
            let fq = f(q);
            for _ in 0..10 {
                let k = 1 + (rng.next_u32() % 3) as usize;
                let n = k + 1 + (rng.next_u32() % 4) as usize;
                let gen = MatGF::from_fn(&fq, k, n, |_, _| {
                    fq.el(rng.next_u32() % q).unwrap()
                });
                let Ok(code) = LinearCode::from_generator(gen) else {
                    continue;
                };
                let ds: Vec<usize> =
                    (1..=k).map(|r| code.ghw(r).unwrap().d_r).collect();
                for w in ds.windows(2) {
                    assert!(w[0] < w[1], "hierarchy not strict: {ds:?}");
                }
            }
        }
    }

    #[test]
    fn decodability_boundary_matches_ghw() {
        for code in [hamming_7_4(), repetition(2, 5), rs_gf5_4_2()] {
            let q = code.q();
            for r in 1..=code.k() {
                let d_r = code.ghw(r).unwrap().d_r;
                let l = saturating_pow(q, r as u32 - 1);
                for method in [
                    DecodabilityMethod::Definition,
                    DecodabilityMethod::Ghw,
                    DecodabilityMethod::Rank,
                ] {
                    assert!(code
                        .is_erasure_list_decodable(d_r - 1, l, method)
                        .unwrap());
                    assert!(!code
                        .is_erasure_list_decodable(d_r, l, method)
                        .unwrap());
                }
            }
        }
    }

    #[test]
    fn decodability_spot_values() {
        let ham = hamming_7_4();
        for method in [
            DecodabilityMethod::Definition,
            DecodabilityMethod::Ghw,
            DecodabilityMethod::Rank,
        ] {
            // d_2 = 5 > 4, so 4 erasures with list 2 are fine.
            assert!(ham.is_erasure_list_decodable(4, 2, method).unwrap());
            assert!(!ham.is_erasure_list_decodable(5, 2, method).unwrap());
            // s = 0 is always decodable.
            assert!(ham.is_erasure_list_decodable(0, 1, method).unwrap());
        }
        assert_eq!(
            ham.is_erasure_list_decodable(8, 1, DecodabilityMethod::Ghw)
                .unwrap_err(),
            CodeError::InvalidErasureCount { s: 8, n: 7 }
        );
        assert_eq!(
            ham.is_erasure_list_decodable(1, 0, DecodabilityMethod::Ghw)
                .unwrap_err(),
            CodeError::InvalidListCap
        );
    }

    #[test]
    fn list_cap_beyond_code_size_decodes_everything() {
        // With r = floor(log_q L) + 1 > k the whole code fits in the list,
        // so every erasure count up to n is fine across all methods.
        let code = repetition(2, 4);
        for method in [
            DecodabilityMethod::Definition,
            DecodabilityMethod::Ghw,
            DecodabilityMethod::Rank,
        ] {
            assert!(code.is_erasure_list_decodable(4, 2, method).unwrap());
        }
        assert_eq!(code.erasure_radius(2).unwrap(), 4);
    }

    #[test]
    fn erasure_radius_examples() {
        assert_eq!(repetition(2, 5).erasure_radius(1).unwrap(), 4);
        assert_eq!(rs_gf5_4_2().erasure_radius(5).unwrap(), 3);
        assert_eq!(hamming_7_4().erasure_radius(3).unwrap(), 4);
        assert_eq!(hamming_7_4().erasure_radius(1).unwrap(), 2);
    }

    #[test]
    fn radius_is_the_exact_threshold() {
        for code in [hamming_7_4(), rs_gf5_4_2(), repetition(3, 4)] {
            for l in [1u128, 2, 3, 9, 30] {
                let rad = code.erasure_radius(l).unwrap();
                let m = DecodabilityMethod::Definition;
                assert!(code.is_erasure_list_decodable(rad, l, m).unwrap());
                if rad < code.n() {
                    assert!(!code.is_erasure_list_decodable(rad + 1, l, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn max_consistent_count_matches_radius() {
        let code = hamming_7_4();
        // At the radius for L the worst pattern meets the cap but not more.
        for l in [1u128, 2, 4] {
            let rad = code.erasure_radius(l).unwrap();
            assert!(code.max_consistent_count(rad, 1 << 20).unwrap() <= l);
            if rad < code.n() {
                assert!(code.max_consistent_count(rad + 1, 1 << 20).unwrap() > l);
            }
        }
        assert_eq!(code.max_consistent_count(0, 1 << 20).unwrap(), 1);
    }

    #[test]
    fn methods_agree_on_small_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for q in [2u32, 3] {
            let fq = f(q);
            for _ in 0..8 {
                let k = 1 + (rng.next_u32() % 3) as usize;
                let n = k + (rng.next_u32() % 4) as usize;
                let gen = MatGF::from_fn(&fq, k, n, |_, _| {
                    fq.el(rng.next_u32() % q).unwrap()
                });
                let Ok(code) = LinearCode::from_generator(gen) else {
                    continue;
                };
                for s in 0..=n {
                    for l in [1u128, q as u128, (q as u128) * (q as u128)] {
                        let answers = [
                            DecodabilityMethod::Definition,
                            DecodabilityMethod::Ghw,
                            DecodabilityMethod::Rank,
                        ]
                        .map(|m| code.is_erasure_list_decodable(s, l, m).unwrap());
                        assert!(
                            answers.iter().all(|&a| a == answers[0]),
                            "methods disagree at q={q} n={n} k={k} s={s} L={l}: {answers:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_erasures_and_list_size() {
        let code = hamming_7_4();
        let m = DecodabilityMethod::Ghw;
        for l in [1u128, 2, 4, 8] {
            let mut prev = true;
            for s in 0..=code.n() {
                let cur = code.is_erasure_list_decodable(s, l, m).unwrap();
                assert!(prev || !cur, "regained decodability as s grew");
                prev = cur;
            }
        }
        for s in 0..=code.n() {
            let mut prev = false;
            for l in [1u128, 2, 4, 8, 16] {
                let cur = code.is_erasure_list_decodable(s, l, m).unwrap();
                assert!(cur || !prev, "lost decodability as L grew");
                prev = cur;
            }
        }
    }

    #[test]
    fn subcode_support_examples() {
        let f2 = f(2);
        let m = MatGF::from_indices(&f2, 2, 5, &[1, 0, 1, 0, 0, 0, 0, 1, 1, 0]).unwrap();
        assert_eq!(subcode_support(&m), vec![0, 2, 3]);
        assert_eq!(subcode_support(&MatGF::zero(&f2, 2, 4)), Vec::<usize>::new());
        assert_eq!(subcode_support(&MatGF::identity(&f2, 3)), vec![0, 1, 2]);
    }

    #[test]
    fn codeword_iteration_is_lexicographic_and_complete() {
        let code = repetition(3, 2);
        let words: Vec<Vec<Fe>> = code.codewords().collect();
        assert_eq!(words.len(), 3);
        let f3 = f(3);
        assert_eq!(words[0], vec![Fe::ZERO, Fe::ZERO]);
        assert_eq!(words[1], vec![Fe::ONE, Fe::ONE]);
        assert_eq!(words[2], vec![f3.el(2).unwrap(), f3.el(2).unwrap()]);

        let ham = hamming_7_4();
        let words: Vec<Vec<Fe>> = ham.codewords().collect();
        assert_eq!(words.len(), 16);
        let mut dedup = words.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
    }

    #[test]
    fn code_file_round_trip() {
        for code in [hamming_7_4(), rs_gf5_4_2(), repetition(3, 4)] {
            let text = code.to_code_file();
            let back = LinearCode::from_code_file(&text).unwrap();
            assert_eq!(back.generator(), code.generator());
            assert_eq!(back.to_code_file(), text);
        }
        let header = "5 4 2\n1 1 1 1\n0 1 2 3\n";
        let code = LinearCode::from_code_file(header).unwrap();
        assert_eq!((code.q(), code.n(), code.k()), (5, 4, 2));
    }

    #[test]
    fn code_file_rejects_rank_deficient_and_malformed() {
        assert!(matches!(
            LinearCode::from_code_file("2 3 2\n1 1 0\n1 1 0\n").unwrap_err(),
            CodeError::RankDeficient { rank: 1, rows: 2 }
        ));
        assert!(matches!(
            LinearCode::from_code_file("2 3\n1 1 0\n").unwrap_err(),
            CodeError::Parse { .. }
        ));
        assert!(matches!(
            LinearCode::from_code_file("2 3 1\n1 1 2\n").unwrap_err(),
            CodeError::Parse { .. }
        ));
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(floor_log(2, 1), 0);
        assert_eq!(floor_log(2, 2), 1);
        assert_eq!(floor_log(2, 3), 1);
        assert_eq!(floor_log(2, 4), 2);
        assert_eq!(floor_log(3, 9), 2);
        assert_eq!(floor_log(3, 8), 1);
        assert_eq!(floor_log(2, u128::MAX), 127);

        assert_eq!(binomial(7, 3), Some(35));
        assert_eq!(binomial(7, 0), Some(1));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(200, 100), None);

        // Subspace counts: [4,2]_2 = 35, [4,2]_4 = 357, [5,2]_11 and
        // [5,3]_11 = 1964810, all verified against the product formula.
        assert_eq!(gaussian_binomial(4, 2, 2), Some(35));
        assert_eq!(gaussian_binomial(4, 2, 4), Some(357));
        assert_eq!(gaussian_binomial(5, 2, 11), Some(1_964_810));
        assert_eq!(gaussian_binomial(5, 3, 11), Some(1_964_810));
        assert_eq!(gaussian_binomial(3, 1, 2), Some(7));
        assert_eq!(gaussian_binomial(6, 3, 4), Some(376_805));
        assert_eq!(gaussian_binomial(2, 3, 5), Some(0));
        assert_eq!(gaussian_binomial(1000, 500, 65536), None);

        assert_eq!(saturating_pow(2, 10), 1024);
        assert_eq!(saturating_pow(65536, 7), 1u128 << 112);
        assert_eq!(saturating_pow(65536, 8), u128::MAX);
        assert_eq!(saturating_pow(2, 200), u128::MAX);
    }

    #[test]
    fn encode_validates_length() {
        let code = hamming_7_4();
        assert!(matches!(
            code.encode(&[Fe::ONE]).unwrap_err(),
            CodeError::MessageLength { got: 1, k: 4 }
        ));
    }
}
