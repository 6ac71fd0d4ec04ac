//! Permutation statistics: the per-permutation polynomials, the shape
//! polynomials, and sampling shapes of large permutations.
//!
//! Run with: cargo run --example permutation_statistics

use qrs::permutations::{
    enumerate_permutations, f_sigma, mu_q, sample_shapes, theta_table, zeta, zeta_by_words,
};
use qrs::qarith::{BigRational, QPolynomial, WeightMode};
use qrs::tableaux::enumerate_standard;
use qrs::shapes::Partition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("F polynomials for n = 3:");
    let mut total = QPolynomial::zero();
    for sigma in enumerate_permutations(3) {
        let f = f_sigma(&sigma)?;
        println!("  F_{sigma} = {f}");
        total = &total + &f;
    }
    println!("  sum over permutations: {total}\n");

    println!("theta polynomials for n = 3:");
    for (lambda, theta) in theta_table(3)? {
        println!("  theta_{lambda} = {theta}");
    }

    // closed form vs the factorial-cost word sum for one pair
    let shape = Partition::new(vec![2, 1])?;
    let standard = enumerate_standard(&shape);
    let (p, q) = (&standard[0], &standard[1]);
    let closed = zeta(p, q)?;
    let brute = zeta_by_words(p, q, &WeightMode::Symbolic)?;
    println!("\nzeta closed form at P={p}, Q={q}: {closed}");
    println!("zeta by summing all 6 permutation words: {brute}");

    // the shape measure of a random 20-permutation at q = 1/2
    let q_point = BigRational::new(1.into(), 2.into());
    let samples = sample_shapes(20, &q_point, 7, 5)?;
    println!("\nfive sampled shapes of size 20 at q = 1/2:");
    for lambda in &samples {
        let mass = mu_q(lambda, &q_point)?;
        use num_traits::ToPrimitive;
        println!("  {lambda}  (mass {:.3e})", mass.to_f64().unwrap());
    }
    Ok(())
}
