//! Convergence of the uniform-parameter Whittaker function to its large-
//! alphabet limit, with exact rational errors.
//!
//! Run with: cargo run --example whittaker_limit

use num_traits::ToPrimitive;
use qrs::qarith::BigRational;
use qrs::shapes::Partition;
use qrs::whittaker::psi_limit_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = BigRational::new(1.into(), 2.into());
    for parts in [vec![1u64], vec![3], vec![2, 1]] {
        let lambda = Partition::new(parts)?;
        let report = psi_limit_check(&lambda, &q, &[3, 6, 12, 24], false)?;
        println!(
            "lambda = {lambda}: limit = {} ({:.6})",
            report.limit,
            report.limit.to_f64().unwrap()
        );
        for (l, err) in &report.errors {
            println!("  l = {l:>2}: |psi - limit| = {:.3e}", err.to_f64().unwrap());
        }
        println!(
            "  strictly decreasing along the doubling sequence: {}\n",
            report.strictly_decreasing
        );
    }
    Ok(())
}
