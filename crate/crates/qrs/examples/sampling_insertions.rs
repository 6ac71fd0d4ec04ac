//! Seeded sampling of single q-insertions, checked against the exact
//! outcome distribution.
//!
//! Run with: cargo run --release --example sampling_insertions

use qrs::insertion::{q_insert_outcomes, q_insert_sample};
use qrs::qarith::WeightMode;
use qrs::rng::RunRng;
use qrs::tableaux::Tableau;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mode = WeightMode::float_at(0.5)?;
    let p = Tableau::from_rows(
        &[vec![1, 2, 2, 2, 3, 5], vec![2, 3, 4, 5], vec![3, 4], vec![5]],
        5,
    )?;
    let outcomes = q_insert_outcomes(&p, 3, &mode)?;

    let runs = 100_000;
    let mut counts = vec![0usize; outcomes.len()];
    let mut rng = RunRng::master(9);
    for _ in 0..runs {
        let (t, _) = q_insert_sample(&p, 3, &mode, &mut rng)?;
        let idx = outcomes.iter().position(|o| o.tableau == t).unwrap();
        counts[idx] += 1;
    }

    println!("inserting 3 into {p} at q = 0.5, {runs} samples:");
    println!("  path rows    exact     empirical");
    for (o, &c) in outcomes.iter().zip(&counts) {
        println!(
            "  {:?}    {:.5}   {:.5}",
            o.path.rows,
            o.weight.to_f64().unwrap(),
            c as f64 / runs as f64
        );
    }
    Ok(())
}
