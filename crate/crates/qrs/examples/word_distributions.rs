//! The weight distribution over tableau pairs after inserting a whole word,
//! in all three weight modes.
//!
//! Run with: cargo run --example word_distributions

use qrs::cli::parse_weight_mode;
use qrs::insertion::phi_distribution;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = [1, 2, 1, 2];
    for mode_text in ["symbolic", "exact:q=1/2", "float:q=0.5"] {
        let mode = parse_weight_mode(mode_text)?;
        let dist = phi_distribution(&word, 2, &mode)?;
        println!("word {word:?}, mode {mode_text}:");
        for ((p, q), w) in dist.iter() {
            println!("  P={p}  Q={q}  weight {w}");
        }
        println!("  support {} pairs, total mass {}\n", dist.len(), dist.total_mass());
    }

    // At q = 0 the distribution collapses onto the classic correspondence.
    let zero = parse_weight_mode("exact:q=0")?;
    let dist = phi_distribution(&word, 2, &zero)?;
    let live: Vec<_> = dist.iter().filter(|(_, w)| !w.is_zero()).collect();
    println!("at q = 0 the only pair left is:");
    let (pair, _) = live[0];
    println!("  P={}  Q={}", pair.0, pair.1);
    Ok(())
}
