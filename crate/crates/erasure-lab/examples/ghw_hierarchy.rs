//! Weight hierarchy of two small codes and what it says about erasures.
//!
//! Computes d_1..d_k for the [7,4] Hamming code and an MDS Reed-Solomon
//! code, shows the minimal-support witness subcodes, and derives the
//! erasure radius for several list sizes. Run with:
//!
//! ```text
//! cargo run --example ghw_hierarchy
//! ```

use erasure_lab::agcode::rs_code;
use erasure_lab::code::{floor_log, subcode_support, LinearCode};
use erasure_lab::gf::field_make;
use erasure_lab::matgf::MatGF;

fn print_hierarchy(name: &str, code: &LinearCode) -> Result<(), Box<dyn std::error::Error>> {
    println!("{name}: [{}, {}] over GF({})", code.n(), code.k(), code.q());
    for r in 1..=code.k() {
        let res = code.ghw(r)?;
        let support = subcode_support(&res.witness);
        println!("  d_{r} = {} with witness support {:?}", res.d_r, support);
        for row in res.witness.row_iter() {
            let word: Vec<usize> = row.iter().map(|e| e.idx()).collect();
            println!("    {word:?}");
        }
    }
    // The radius for list size L depends only on d_r at r = floor(log_q L) + 1.
    for l in [1u128, code.q() as u128, (code.q() as u128).pow(2)] {
        let rad = code.erasure_radius(l)?;
        let r = floor_log(code.q(), l) + 1;
        println!("  list size {l}: decodes any {rad} erasures (uses d_{r})");
    }
    println!();
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = field_make(2)?;
    #[rustfmt::skip]
    let entries = [
        1, 0, 0, 0, 0, 1, 1,
        0, 1, 0, 0, 1, 0, 1,
        0, 0, 1, 0, 1, 1, 0,
        0, 0, 0, 1, 1, 1, 1,
    ];
    let hamming = LinearCode::from_generator(MatGF::from_indices(&f2, 4, 7, &entries)?)?;
    print_hierarchy("Hamming", &hamming)?;

    // MDS codes have the flattest possible hierarchy: d_r = n - k + r.
    let f7 = field_make(7)?;
    let rs = rs_code(&f7, 6, 3, None)?;
    print_hierarchy("Reed-Solomon", &rs)?;
    for r in 1..=rs.k() {
        let expect = rs.n() - rs.k() + r;
        assert_eq!(rs.ghw(r)?.d_r, expect, "MDS hierarchy must be exact");
    }
    println!("Reed-Solomon hierarchy matches d_r = n - k + r, as every MDS code must.");
    Ok(())
}
