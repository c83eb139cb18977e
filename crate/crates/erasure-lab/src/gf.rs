//! Small finite fields GF(q) for prime powers q <= 2^16.
//!
//! A field element is an index into a fixed enumeration: writing q = p^d and
//! an element as a polynomial c_0 + c_1 x + ... + c_{d-1} x^{d-1} over GF(p),
//! its index is the base-p integer c_0 + c_1 p + ... + c_{d-1} p^{d-1}. Index
//! 0 is zero and index 1 is one in every field. The modulus is the
//! lexicographically smallest monic irreducible polynomial of degree d, so the
//! enumeration depends only on q and two calls to [`field_make`] always agree.
//!
//! Addition works digit by digit on indices; multiplication, inversion, and
//! powering go through exp/log tables over a fixed primitive element (the
//! element of smallest index with multiplicative order q - 1).

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field size {0} exceeds the 2^16 limit")]
    TooLarge(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {idx} out of range for GF({q})")]
    InvalidElement { idx: u32, q: u32 },
}

/// An element of some GF(q), stored as its index. Which field it belongs to
/// is contextual; all arithmetic goes through a [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Fe(u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Index of this element in the field enumeration.
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to a field; cheap to clone.
pub type Field = Arc<FieldSpec>;

/// Arithmetic tables for one GF(q).
pub struct FieldSpec {
    q: u32,
    p: u32,
    deg: u32,
    /// Modulus coefficients, little endian, length deg + 1, leading 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for the chosen primitive g; length q - 1.
    exp: Vec<u16>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("deg", &self.deg)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for FieldSpec {}

/// Builds GF(q). Fails unless q is a prime power with q <= 2^16.
pub fn field_make(q: u32) -> Result<Field, GfError> {
    if q > MAX_FIELD_SIZE {
        return Err(GfError::TooLarge(q));
    }
    let (p, deg) = prime_power_split(q).ok_or(GfError::NotPrimePower(q))?;
    let modulus = smallest_irreducible(p, deg);
    let ctx = PolyCtx { p: p as u64, deg: deg as usize, modulus: &modulus };

    let g = find_primitive(q, &ctx);
    let mut exp = vec![0u16; (q - 1) as usize];
    let mut log = vec![0u16; q as usize];
    let gp = ctx.from_idx(g);
    let mut cur = ctx.from_idx(1);
    for i in 0..(q - 1) as usize {
        let idx = ctx.to_idx(&cur);
        exp[i] = idx as u16;
        log[idx as usize] = i as u16;
        cur = ctx.mul(&cur, &gp);
    }
    debug_assert_eq!(ctx.to_idx(&cur), 1, "primitive element order mismatch");

    Ok(Arc::new(FieldSpec { q, p, deg, modulus, exp, log }))
}

impl FieldSpec {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Field characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn deg(&self) -> u32 {
        self.deg
    }

    /// Modulus coefficients, little endian, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// exp table: exp_table()[i] is the index of g^i.
    pub fn exp_table(&self) -> &[u16] {
        &self.exp
    }

    /// log table: log_table()[a.idx()] is the discrete log of nonzero a.
    pub fn log_table(&self) -> &[u16] {
        &self.log
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The element with the given index.
    pub fn el(&self, idx: u32) -> Result<Fe, GfError> {
        if idx < self.q {
            Ok(Fe(idx as u16))
        } else {
            Err(GfError::InvalidElement { idx, q: self.q })
        }
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(|i| Fe(i as u16))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let p = self.p as u64;
        let (mut a, mut b) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            place *= p;
            a /= p;
            b /= p;
        }
        Fe(out as u16)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u64;
        let mut a = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            place *= p;
            a /= p;
        }
        Fe(out as u16)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe(0);
        }
        let m = self.q as u32 - 1;
        let e = (self.log[a.idx()] as u32 + self.log[b.idx()] as u32) % m;
        Fe(self.exp[e as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let m = self.q - 1;
        let e = (m - self.log[a.idx()] as u32) % m;
        Ok(Fe(self.exp[e as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a.is_zero() {
            return if e == 0 { Fe(1) } else { Fe(0) };
        }
        let m = (self.q - 1) as u64;
        let e = (self.log[a.idx()] as u64 * (e % m)) % m;
        Fe(self.exp[e as usize])
    }
}

/// Returns (p, d) with q = p^d, p prime, or None.
fn prime_power_split(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut deg = 0;
    while rest % p == 0 {
        rest /= p;
        deg += 1;
    }
    if rest == 1 {
        Some((p, deg))
    } else {
        None
    }
}

/// Polynomial arithmetic over GF(p) used only during construction.
/// Coefficient vectors are little endian.
struct PolyCtx<'a> {
    p: u64,
    deg: usize,
    modulus: &'a [u32],
}

impl PolyCtx<'_> {
    fn from_idx(&self, mut idx: u32) -> Vec<u64> {
        let mut c = vec![0u64; self.deg];
        for digit in c.iter_mut() {
            *digit = idx as u64 % self.p;
            idx /= self.p as u32;
        }
        c
    }

    fn to_idx(&self, c: &[u64]) -> u32 {
        let mut idx = 0u64;
        for &digit in c.iter().rev() {
            idx = idx * self.p + digit;
        }
        idx as u32
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut conv = vec![0u64; 2 * self.deg];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                conv[i + j] = (conv[i + j] + ai * bj) % self.p;
            }
        }
        for i in (self.deg..2 * self.deg).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            for j in 0..self.deg {
                let m = self.modulus[j] as u64;
                conv[i - self.deg + j] =
                    (conv[i - self.deg + j] + (self.p - c * m % self.p) % self.p) % self.p;
            }
        }
        conv.truncate(self.deg);
        conv
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.from_idx(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Remainder of `a` divided by monic `m`, both little endian over GF(p).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let md = m.len() - 1;
    while r.len() > md {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - md;
        if lead != 0 {
            for j in 0..md {
                r[shift + j] = (r[shift + j] + (p - lead * m[j] % p) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(cand: &[u64], p: u64) -> bool {
    let d = cand.len() - 1;
    if d == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=d/2.
    for dd in 1..=d / 2 {
        let count = p.pow(dd as u32);
        for t in 0..count {
            let mut div = vec![0u64; dd + 1];
            let mut tt = t;
            for digit in div.iter_mut().take(dd) {
                *digit = tt % p;
                tt /= p;
            }
            div[dd] = 1;
            let rem = poly_rem(cand, &div, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree d over GF(p), ordered by the base-p
/// encoding of the lower coefficients.
fn smallest_irreducible(p: u32, d: u32) -> Vec<u32> {
    let p64 = p as u64;
    let d = d as usize;
    let mut t = 0u64;
    loop {
        let mut cand = vec![0u64; d + 1];
        let mut tt = t;
        for digit in cand.iter_mut().take(d) {
            *digit = tt % p64;
            tt /= p64;
        }
        cand[d] = 1;
        if is_irreducible(&cand, p64) {
            return cand.iter().map(|&c| c as u32).collect();
        }
        t += 1;
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Index of the smallest element with multiplicative order q - 1.
fn find_primitive(q: u32, ctx: &PolyCtx) -> u32 {
    let m = (q - 1) as u64;
    let factors = prime_factors(m);
    'cand: for g in 1..q {
        let gp = ctx.from_idx(g);
        for &f in &factors {
            if ctx.to_idx(&ctx.pow(&gp, m / f)) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("every finite field has a primitive element");
}
