//! List decoding a Reed-Solomon code across the erasure radius.
//!
//! Encodes a message, erases more and more positions, and shows how the
//! consistent-codeword list stays a singleton up to the radius for L = 1,
//! then grows by factors of q beyond it. Run with:
//!
//! ```text
//! cargo run --example erasure_decode
//! ```

use erasure_lab::agcode::rs_code;
use erasure_lab::code::ErasureQuery;
use erasure_lab::erasure::{erase, list_decode, ErasurePattern};
use erasure_lab::gf::field_make;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = field_make(5)?;
    let code = rs_code(&f, 4, 2, None)?;
    println!(
        "[{}, {}] Reed-Solomon over GF(5); distance {}, so any {} erasures decode uniquely.",
        code.n(),
        code.k(),
        code.ghw(1)?.d_r,
        code.erasure_radius(1)?
    );

    let msg = vec![f.el(3)?, f.el(1)?];
    let sent = code.encode(&msg)?;
    let sent_idx: Vec<usize> = sent.iter().map(|e| e.idx()).collect();
    println!("message (3, 1) encodes to {sent_idx:?}\n");

    // Erase a growing prefix of positions and decode what remains.
    for erased_count in 0..code.n() {
        let erased: Vec<usize> = (0..erased_count).collect();
        let pattern = ErasurePattern::from_erased(code.n(), &erased)?;
        let received = erase(&sent, &pattern)?;
        let query = ErasureQuery::new(pattern.kept().to_vec(), received, 1000)?;
        let list = list_decode(&code, &query)?;
        let words: Vec<Vec<usize>> = list
            .codewords
            .iter()
            .map(|w| w.iter().map(|e| e.idx()).collect())
            .collect();
        println!(
            "erase {erased_count}: {} consistent codeword(s), solution dimension {}",
            words.len(),
            list.solution_dim
        );
        for w in &words {
            let marker = if *w == sent_idx { "  <- transmitted" } else { "" };
            println!("    {w:?}{marker}");
        }
        assert!(
            words.contains(&sent_idx),
            "the transmitted word is always in the list"
        );
        // Erasures never disambiguate below the code's own ambiguity:
        // the list size is exactly q^(k - rank of kept columns).
        assert_eq!(words.len() as u128, 5u128.pow(list.solution_dim as u32));
    }
    Ok(())
}
