//! The executable identity suites at desk scale, plus one negative control
//! showing that a mutated kernel is caught.
//!
//! Run with: cargo run --example identity_checks

use qrs::insertion::KernelVariant;
use qrs::qarith::{BigRational, WeightMode};
use qrs::verify::{
    verify_cauchy, verify_corollary3, verify_eigen, verify_eq3, verify_intertwining,
    verify_intertwining_recursive, verify_stochasticity, verify_theorem2,
};
use qrs::whittaker::WhittakerContext;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = WhittakerContext::new(
        3,
        vec![rat(1, 2), rat(1, 4), rat(1, 4)],
        WeightMode::Symbolic,
    )?;

    println!("{}", verify_stochasticity(3, 4, ctx.mode(), KernelVariant::Standard, 1)?.summary());
    println!("{}", verify_theorem2(&ctx, 3, KernelVariant::Standard, 1)?.summary());
    println!("{}", verify_intertwining(&ctx, 4, KernelVariant::Standard)?.summary());
    println!("{}", verify_intertwining_recursive(&ctx, 4, KernelVariant::Standard)?.summary());
    println!("{}", verify_eigen(&ctx, 5, false)?.summary());
    println!("{}", verify_cauchy(&ctx, 5, false)?.summary());
    println!("{}", verify_corollary3(&ctx, 3, KernelVariant::Standard)?.summary());
    println!("{}", verify_eq3(4, 4, false)?.summary());

    // A suite that cannot fail is worthless: replace the bump weight by the
    // push weight and watch the intertwining break.
    let mutated = verify_intertwining(&ctx, 3, KernelVariant::F1AsF0)?;
    println!("\nnegative control (bump weight replaced by push weight):");
    println!("{}", mutated.summary());
    if let Some(cx) = mutated.failures.first() {
        println!("  first counterexample: {}", cx.context);
        println!("    lhs = {}", cx.lhs);
        println!("    rhs = {}", cx.rhs);
    }
    Ok(())
}
