//! Erasure patterns and the list decoder.
//!
//! Decoding from erasures is linear algebra: the kept coordinates of a
//! codeword x G are known, so the messages consistent with the received
//! word are the solutions of (G restricted to kept columns)^T . msg = values.
//! The decoder solves that system once and walks the coset, so its work is
//! polynomial in n, k plus the size of the emitted list; at no point does it
//! enumerate all q^k codewords.
//!
//! Output lists are deterministic: codewords appear in lexicographic order
//! of the kernel coefficient vector, so truncated lists are stable prefixes.

use serde::Serialize;
use thiserror::Error;

use crate::code::{CodeError, ErasureQuery, LinearCode};
use crate::gf::{Fe, GfError};
use crate::matgf::{parse_numbers, MatError, MatGF};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ErasureError {
    #[error("position {pos} out of range for length {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("word length {got} does not match pattern length {n}")]
    WordLength { got: usize, n: usize },
    #[error("symbol index {idx} out of range for GF({q})")]
    InvalidSymbol { idx: usize, q: u32 },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Which of the n coordinates survived the channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasurePattern {
    n: usize,
    kept: Vec<usize>,
}

impl ErasurePattern {
    /// Kept positions must be strictly increasing and below n.
    pub fn new(n: usize, kept: Vec<usize>) -> Result<Self, ErasureError> {
        for w in kept.windows(2) {
            if w[0] >= w[1] {
                return Err(MatError::UnsortedSelection.into());
            }
        }
        if let Some(&last) = kept.last() {
            if last >= n {
                return Err(ErasureError::PositionOutOfRange { pos: last, n });
            }
        }
        Ok(ErasurePattern { n, kept })
    }

    /// Builds the pattern that erases exactly the given positions.
    pub fn from_erased(n: usize, erased: &[usize]) -> Result<Self, ErasureError> {
        for w in erased.windows(2) {
            if w[0] >= w[1] {
                return Err(MatError::UnsortedSelection.into());
            }
        }
        if let Some(&last) = erased.last() {
            if last >= n {
                return Err(ErasureError::PositionOutOfRange { pos: last, n });
            }
        }
        let kept = (0..n).filter(|i| !erased.contains(i)).collect();
        Ok(ErasurePattern { n, kept })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn erased_count(&self) -> usize {
        self.n - self.kept.len()
    }

    /// The erased positions, ascending.
    pub fn erased(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.kept.contains(i)).collect()
    }
}

/// Restriction of a word to the kept coordinates.
pub fn erase(word: &[Fe], pattern: &ErasurePattern) -> Result<Vec<Fe>, ErasureError> {
    if word.len() != pattern.n() {
        return Err(ErasureError::WordLength { got: word.len(), n: pattern.n() });
    }
    Ok(pattern.kept().iter().map(|&i| word[i]).collect())
}

/// Result of a list decode. `codewords` is the full consistency list unless
/// `truncated`, in which case it is the first `list_cap` entries of it; the
/// full list always has q^solution_dim entries, or none when the received
/// values are inconsistent with every codeword.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodeList {
    pub solution_dim: usize,
    pub truncated: bool,
    pub codewords: Vec<Vec<Fe>>,
}

/// All codewords agreeing with the query on its kept coordinates, in
/// lexicographic kernel-coefficient order, truncated at the query's cap.
pub fn list_decode(code: &LinearCode, query: &ErasureQuery) -> Result<DecodeList, ErasureError> {
    let f = code.field().clone();
    let q = f.q();
    if let Some(&last) = query.kept().last() {
        if last >= code.n() {
            return Err(ErasureError::PositionOutOfRange { pos: last, n: code.n() });
        }
    }
    for &v in query.values() {
        if v.idx() >= q as usize {
            return Err(ErasureError::InvalidSymbol { idx: v.idx(), q });
        }
    }

    // One equation per kept coordinate: sum_j msg_j G[j][t] = value_t.
    let a = MatGF::from_fn(&f, query.kept().len(), code.k(), |t, j| {
        code.generator().get(j, query.kept()[t])
    });
    let Some(sol) = a.solve_affine(query.values())? else {
        let dim = code.k() - a.rank();
        return Ok(DecodeList { solution_dim: dim, truncated: false, codewords: vec![] });
    };

    let dim = sol.kernel.rows();
    // Saturating q^dim; the saturation point is far beyond any real cap.
    let total = crate::code::saturating_pow(q, dim as u32);
    let cap = query.list_cap();
    let truncated = total > cap;
    let emit = if truncated { cap } else { total };

    let mut codewords = Vec::with_capacity(emit.min(1 << 20) as usize);
    let mut coeffs = vec![0u32; dim];
    let mut msg = vec![Fe::ZERO; code.k()];
    let mut emitted: u128 = 0;
    loop {
        if emitted == emit {
            break;
        }
        msg.copy_from_slice(&sol.particular);
        for (ci, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let ce = f.el(c).expect("coefficient below q");
            let krow = sol.kernel.row(ci);
            for (j, cell) in msg.iter_mut().enumerate() {
                *cell = f.add(*cell, f.mul(ce, krow[j]));
            }
        }
        codewords.push(code.encode(&msg)?);
        emitted += 1;
        // Advance the coefficient odometer, last coordinate fastest.
        let mut i = dim;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
        }
        if coeffs.iter().all(|&c| c == 0) {
            break;
        }
    }
    Ok(DecodeList { solution_dim: dim, truncated, codewords })
}

/// A decode request file: a code followed by the kept positions and values.
///
/// ```text
/// q n k
/// <k generator rows>
/// kept: 0 2 5
/// values: 1 0 3
/// ```
#[derive(Debug, Clone)]
pub struct DecodeRequest {
    pub code: LinearCode,
    pub kept: Vec<usize>,
    pub values: Vec<Fe>,
}

impl DecodeRequest {
    pub fn query(&self, list_cap: u128) -> Result<ErasureQuery, ErasureError> {
        Ok(ErasureQuery::new(self.kept.clone(), self.values.clone(), list_cap)?)
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = self.code.to_code_file();
        let kept: Vec<String> = self.kept.iter().map(|p| p.to_string()).collect();
        let values: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "kept: {}", kept.join(" "));
        let _ = writeln!(out, "values: {}", values.join(" "));
        out
    }

    pub fn from_text(text: &str) -> Result<DecodeRequest, ErasureError> {
        let mut code_lines = Vec::new();
        let mut kept: Option<(usize, String)> = None;
        let mut values: Option<(usize, String)> = None;
        for (ln, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("kept:") {
                if kept.is_some() {
                    return Err(parse_err(ln + 1, "duplicate `kept:` line"));
                }
                kept = Some((ln + 1, rest.to_string()));
            } else if let Some(rest) = trimmed.strip_prefix("values:") {
                if values.is_some() {
                    return Err(parse_err(ln + 1, "duplicate `values:` line"));
                }
                values = Some((ln + 1, rest.to_string()));
            } else if kept.is_none() && values.is_none() {
                code_lines.push(line);
            } else {
                return Err(parse_err(ln + 1, "code rows after kept/values"));
            }
        }
        let code = LinearCode::from_code_file(&code_lines.join("\n"))?;
        let (kln, kept) = kept.ok_or_else(|| parse_err(0, "missing `kept:` line"))?;
        let (vln, values) = values.ok_or_else(|| parse_err(0, "missing `values:` line"))?;
        let kept: Vec<usize> = parse_numbers(&kept, kln)
            .map_err(ErasureError::Matrix)?
            .into_iter()
            .map(|v| v as usize)
            .collect();
        let f = code.field().clone();
        let values: Vec<Fe> = parse_numbers(&values, vln)
            .map_err(ErasureError::Matrix)?
            .into_iter()
            .map(|v| {
                if v >= f.q() as u64 {
                    Err(parse_err(vln, &format!("element index {v} out of range")))
                } else {
                    Ok(f.el(v as u32).expect("checked above"))
                }
            })
            .collect::<Result<_, _>>()?;
        if kept.len() != values.len() {
            return Err(parse_err(
                vln,
                &format!("{} kept positions but {} values", kept.len(), values.len()),
            ));
        }
        for w in kept.windows(2) {
            if w[0] >= w[1] {
                return Err(ErasureError::Matrix(MatError::UnsortedSelection));
            }
        }
        if let Some(&last) = kept.last() {
            if last >= code.n() {
                return Err(ErasureError::PositionOutOfRange { pos: last, n: code.n() });
            }
        }
        Ok(DecodeRequest { code, kept, values })
    }
}

fn parse_err(line: usize, reason: &str) -> ErasureError {
    ErasureError::Code(CodeError::Parse { line, reason: reason.to_string() })
}
