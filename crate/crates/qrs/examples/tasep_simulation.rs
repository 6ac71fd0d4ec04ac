//! q-TASEP: one trajectory, and the Monte Carlo histogram of the last
//! particle against the exact truncated series.
//!
//! Run with: cargo run --release --example tasep_simulation

use qrs::qarith::{BigRational, WeightMode};
use qrs::qtasep::{compare_mc_vs_formula, rates, simulate_ct, ParticleConfig};
use qrs::rng::RunRng;
use qrs::whittaker::WhittakerContext;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (l, q, t) = (3usize, 0.5f64, 2.0f64);
    let a = [0.5, 0.25, 0.25];

    // the step initial condition blocks everything but the front particle
    let step = ParticleConfig::step(l);
    println!("step condition {:?}, rates {:?}\n", step.positions(), rates(&step, &a, q));

    let mut rng = RunRng::master(5);
    println!("one trajectory to t = {t}:");
    for (time, config) in simulate_ct(l, &a, q, t, &mut rng)? {
        println!("  t = {time:.4}  x = {:?}", config.positions());
    }

    // 20k runs vs the exact series, truncated with a certified tail bound
    let ctx = WhittakerContext::probability(
        l,
        vec![rat(1, 2), rat(1, 4), rat(1, 4)],
        WeightMode::exact_at(rat(1, 2))?,
    )?;
    let report = compare_mc_vs_formula(&ctx, t, 20_000, 1e-8, 1e-3, 42, 2)?;
    println!("\nlast-particle law at t = {t} ({} runs):", report.runs);
    println!("  m   formula      empirical    pass");
    for row in &report.rows {
        println!(
            "  {}   {:.6}     {:.6}     {}",
            row.m,
            row.formula,
            row.empirical,
            if row.pass { "yes" } else { "NO" }
        );
    }
    println!("overall: {}", if report.passed { "PASS" } else { "FAIL" });
    Ok(())
}
