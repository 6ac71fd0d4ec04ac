//! The q-weighted insertion kernel: every outcome of one insertion with its
//! exact symbolic weight.
//!
//! Run with: cargo run --example insertion_weights

use qrs::insertion::q_insert_outcomes;
use qrs::qarith::WeightMode;
use qrs::tableaux::Tableau;

fn show(p: &Tableau, k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let mode = WeightMode::Symbolic;
    println!("inserting {k} into {p}:");
    let outcomes = q_insert_outcomes(p, k, &mode)?;
    for o in &outcomes {
        println!("  rows {:?}  ->  {}  (weight {})", o.path.rows, o.tableau, o.weight);
    }
    let total = outcomes.iter().fold(mode.zero(), |acc, o| &acc + &o.weight);
    println!("  total mass: {total}\n");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two letters: inserting a 2 either extends row 2 (weight 1 - q) or
    // pushes along row 1 (weight q).
    let p = Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2]], 2)?;
    show(&p, 2)?;
    // Inserting a 1 is deterministic.
    show(&p, 1)?;

    // A five-letter tableau where inserting a 3 has four possible outcomes,
    // including a genuine push-or-bump branch with rational-function weights.
    let p = Tableau::from_rows(
        &[vec![1, 2, 2, 2, 3, 5], vec![2, 3, 4, 5], vec![3, 4], vec![5]],
        5,
    )?;
    show(&p, 3)?;
    Ok(())
}
