//! Closed-form bound calculators: q-ary entropy, the random-coding rate
//! lower bound for erasure list decoding, the erasure Johnson bound, and
//! the comparison of the algebraic-geometry rate against the
//! distance-plus-Johnson route.
//!
//! Policy on precision: transcendental quantities are f64 with tolerances
//! around 1e-9; quantities that are rational in the inputs (the AG vs
//! Johnson gap in particular) also get an exact `Ratio<i128>` path so
//! identities can be asserted with equality, not tolerance. Negative bound
//! values are reported as is and flagged vacuous, never clamped silently.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::code::floor_log;
use crate::gf::{field_make, GfError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("{what} = {got} outside the domain {domain}")]
    Domain { what: &'static str, got: f64, domain: &'static str },
    #[error("q = {0} must be a square (of a prime power) for the AG comparison")]
    NotSquare(u32),
    #[error("list size must be at least 1")]
    InvalidListSize,
    #[error(transparent)]
    Field(#[from] GfError),
}

fn require(ok: bool, what: &'static str, got: f64, domain: &'static str) -> Result<(), BoundsError> {
    if ok {
        Ok(())
    } else {
        Err(BoundsError::Domain { what, got, domain })
    }
}

/// q-ary entropy H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x),
/// with the endpoint convention 0 log 0 = 0. Defined for any alphabet
/// size q >= 2, not just prime powers.
pub fn entropy_q(q: u32, x: f64) -> Result<f64, BoundsError> {
    require(q >= 2, "q", q as f64, "q >= 2")?;
    require((0.0..=1.0).contains(&x), "x", x, "[0, 1]")?;
    let lnq = (q as f64).ln();
    let mut h = x * ((q - 1) as f64).ln() / lnq;
    if x > 0.0 {
        h -= x * x.ln() / lnq;
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).ln() / lnq;
    }
    Ok(h)
}

/// A rate lower bound together with the list exponent it certifies.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RateBound {
    /// The exponent r with guaranteed list size (q^r - 1)/(q - 1) < q^r.
    pub r: u32,
    /// The bound itself; can be negative for large tau.
    pub value: f64,
    /// True when the bound says nothing (value <= 0).
    pub vacuous: bool,
}

/// Random-coding rate bound for (tau, L)-erasure list decoding:
/// with r = floor(log_q L) + 1,
/// rate >= 1 - (tau/r) log_q((q^r - 1)/(q - 1)) - H_q(tau)/r.
pub fn rate_lower_bound(q: u32, list_size: u128, tau: f64) -> Result<RateBound, BoundsError> {
    if list_size < 1 {
        return Err(BoundsError::InvalidListSize);
    }
    require(q >= 2, "q", q as f64, "q >= 2")?;
    let r = floor_log(q, list_size) + 1;
    rate_lower_bound_at_r(q, r, tau)
}

/// Same bound parameterized by the list exponent r directly.
pub fn rate_lower_bound_at_r(q: u32, r: u32, tau: f64) -> Result<RateBound, BoundsError> {
    require(q >= 2, "q", q as f64, "q >= 2")?;
    require(r >= 1, "r", r as f64, "r >= 1")?;
    require((0.0..=1.0).contains(&tau), "tau", tau, "[0, 1]")?;
    let h = entropy_q(q, tau)?;
    let rf = r as f64;
    // log_q((q^r - 1)/(q - 1)) = r + (ln(1 - q^-r) - ln(q - 1)) / ln q,
    // stable for any r where q^r overflows.
    let lnq = (q as f64).ln();
    let log_term = rf + ((-(q as f64).powi(-(r as i32))).ln_1p() - ((q - 1) as f64).ln()) / lnq;
    let value = 1.0 - tau / rf * log_term - h / rf;
    Ok(RateBound { r, value, vacuous: value <= 0.0 })
}

/// Erasure radius certified by the Johnson-style argument from relative
/// distance delta: delta * q / (q - 1), valid for delta < 1 - 1/q.
pub fn johnson_erasure(q: u32, delta: f64) -> Result<f64, BoundsError> {
    require(q >= 2, "q", q as f64, "q >= 2")?;
    require(
        delta >= 0.0 && delta < 1.0 - 1.0 / q as f64,
        "delta",
        delta,
        "[0, 1 - 1/q)",
    )?;
    Ok(delta * q as f64 / (q - 1) as f64)
}

/// Both headline rates at erasure fraction tau over GF(q), q a square.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AgJohnsonComparison {
    /// 1 - tau - 1/(sqrt(q) - 1) + 1/q - epsilon.
    pub ag_rate: f64,
    /// 1 - tau - 1/(sqrt(q) - 1) + tau/q - epsilon.
    pub johnson_rate: f64,
    /// ag_rate - johnson_rate, identically (1 - tau)/q.
    pub gap: f64,
}

fn square_root_of(q: u32) -> Result<u32, BoundsError> {
    let _ = field_make(q)?;
    let s = (q as f64).sqrt().round() as u32;
    if s >= 2 && s * s == q {
        Ok(s)
    } else {
        Err(BoundsError::NotSquare(q))
    }
}

/// Compares the rate achieved directly on curves over GF(q) with the rate
/// the Johnson route certifies at the same erasure fraction. The gap is
/// computed through the algebraic identity (1 - tau)/q rather than by
/// subtraction, so it is exact whenever tau is.
pub fn ag_vs_johnson_rates(
    q: u32,
    tau: f64,
    epsilon: f64,
) -> Result<AgJohnsonComparison, BoundsError> {
    let s = square_root_of(q)?;
    require(tau > 0.0 && tau < 1.0, "tau", tau, "(0, 1)")?;
    require(epsilon >= 0.0, "epsilon", epsilon, "epsilon >= 0")?;
    let qf = q as f64;
    let common = 1.0 - tau - 1.0 / (s as f64 - 1.0) - epsilon;
    Ok(AgJohnsonComparison {
        ag_rate: common + 1.0 / qf,
        johnson_rate: common + tau / qf,
        gap: (1.0 - tau) / qf,
    })
}

/// Exact-rational version of [`ag_vs_johnson_rates`]; returns
/// (ag_rate, johnson_rate, gap) with gap = ag_rate - johnson_rate held as
/// an identity of rationals.
pub fn ag_vs_johnson_rates_exact(
    q: u32,
    tau: Ratio<i128>,
    epsilon: Ratio<i128>,
) -> Result<(Ratio<i128>, Ratio<i128>, Ratio<i128>), BoundsError> {
    let s = square_root_of(q)? as i128;
    let one = Ratio::from_integer(1);
    require(
        tau > Ratio::from_integer(0) && tau < one,
        "tau",
        ratio_to_f64(tau),
        "(0, 1)",
    )?;
    require(
        epsilon >= Ratio::from_integer(0),
        "epsilon",
        ratio_to_f64(epsilon),
        "epsilon >= 0",
    )?;
    let qr = Ratio::from_integer(q as i128);
    let common = one - tau - Ratio::new(1, s - 1) - epsilon;
    let ag = common + qr.recip();
    let johnson = common + tau / qr;
    let gap = ag - johnson;
    debug_assert_eq!(gap, (one - tau) / qr);
    Ok((ag, johnson, gap))
}

fn ratio_to_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// One row of the bounds comparison table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundsTableRow {
    pub q: u32,
    pub tau: f64,
    pub epsilon: f64,
    pub r: u32,
    pub rate_lb: f64,
    pub johnson_rate: f64,
    pub ag_rate: f64,
    pub gap: f64,
    pub capacity: f64,
}

/// Column header matching [`BoundsTableRow::csv_row`].
pub const BOUNDS_CSV_HEADER: &str = "q,tau,epsilon,r,rate_lb,johnson_rate,ag_rate,gap,capacity";

impl BoundsTableRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.q,
            self.tau,
            self.epsilon,
            self.r,
            self.rate_lb,
            self.johnson_rate,
            self.ag_rate,
            self.gap,
            self.capacity
        )
    }
}

/// Sweeps tau over a grid and tabulates all the bounds at list exponent r.
/// Requires square q since the AG columns do.
pub fn bounds_table(
    q: u32,
    r: u32,
    epsilon: f64,
    taus: &[f64],
) -> Result<Vec<BoundsTableRow>, BoundsError> {
    let mut rows = Vec::with_capacity(taus.len());
    for &tau in taus {
        let rate = rate_lower_bound_at_r(q, r, tau)?;
        let cmp = ag_vs_johnson_rates(q, tau, epsilon)?;
        rows.push(BoundsTableRow {
            q,
            tau,
            epsilon,
            r,
            rate_lb: rate.value,
            johnson_rate: cmp.johnson_rate,
            ag_rate: cmp.ag_rate,
            gap: cmp.gap,
            capacity: 1.0 - tau,
        });
    }
    Ok(rows)
}
