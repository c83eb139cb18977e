//! Rate bounds side by side: entropy, the random-coding bound, and the
//! AG-versus-Johnson comparison.
//!
//! Prints H_q values, shows the random-coding rate bound climbing toward
//! capacity 1 - tau as the list exponent grows, and tabulates the exact
//! rational gap between the AG route and the Johnson route over GF(16).
//! Run with:
//!
//! ```text
//! cargo run --example rate_bounds
//! ```

use erasure_lab::bounds::{
    ag_vs_johnson_rates_exact, bounds_table, entropy_q, johnson_erasure, rate_lower_bound,
    rate_lower_bound_at_r, BOUNDS_CSV_HEADER,
};
use num_rational::Ratio;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("q-ary entropy:");
    for (q, x) in [(2u32, 0.11), (2, 0.5), (4, 0.3)] {
        println!("  H_{q}({x}) = {:.12}", entropy_q(q, x)?);
    }

    // With list size 1 the bound is the classical 1 - H_q(tau); larger
    // lists buy rate toward capacity.
    let tau = 0.5;
    println!("\nrate lower bound at tau = {tau} over GF(2):");
    for l in [1u128, 2, 4, 16, 1 << 10] {
        let b = rate_lower_bound(2, l, tau)?;
        println!("  L = {l:>4} (r = {:>2}): rate >= {:.6}", b.r, b.value);
    }
    for r in [20u32, 100, 1000] {
        let b = rate_lower_bound_at_r(2, r, tau)?;
        println!("  r = {r:>4} directly  : rate >= {:.6}", b.value);
    }
    println!("  capacity is 1 - tau = {}", 1.0 - tau);

    // The Johnson route through relative distance loses a factor the AG
    // construction keeps: the gap is exactly (1 - tau)/q.
    println!("\nAG vs Johnson over GF(16), exact rationals:");
    for i in [1i128, 25, 50, 75, 99] {
        let t = Ratio::new(i, 100);
        let (ag, jo, gap) = ag_vs_johnson_rates_exact(16, t, Ratio::new(0, 1))?;
        println!("  tau = {i}/100: ag {ag}, johnson {jo}, gap {gap}");
        assert_eq!(gap, (Ratio::from_integer(1) - t) / Ratio::from_integer(16));
    }

    println!("\ndistance-based erasure radius (Johnson): delta = 0.4, q = 2 -> {}", johnson_erasure(2, 0.4)?);

    println!("\nfirst rows of the CSV table the CLI emits:");
    println!("{BOUNDS_CSV_HEADER}");
    let taus: Vec<f64> = (1..=5).map(|i| i as f64 / 10.0).collect();
    for row in bounds_table(16, 2, 0.0, &taus)? {
        println!("{}", row.csv_row());
    }
    Ok(())
}
