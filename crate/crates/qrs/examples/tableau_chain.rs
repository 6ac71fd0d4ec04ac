//! The tableau-valued Markov chain of random q-insertions and its coupling
//! to the particle system through the diagonal pattern entries.
//!
//! Run with: cargo run --example tableau_chain

use qrs::insertion::run_tableau_chain;
use qrs::qarith::WeightMode;
use qrs::qtasep::discrete_projection;
use qrs::rng::RunRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 3;
    let a = [0.5, 0.25, 0.25];
    let mode = WeightMode::float_at(0.5)?;
    let mut rng = RunRng::master(2);

    let chain = run_tableau_chain(l, &a, &mode, 10, &mut rng)?;
    let particles = discrete_projection(&chain);

    println!("step  shape        particles         tableau");
    for (step, (tableau, config)) in chain.iter().zip(&particles).enumerate() {
        println!(
            "{step:>4}  {:<12} {:<17} {tableau}",
            tableau.shape().to_string(),
            format!("{:?}", config.positions()),
        );
    }
    println!("\neach insertion grows one shape cell; the particle vector");
    println!("reads the diagonal entries and moves like the exclusion process");
    Ok(())
}
