//! q-Whittaker functions: the branching recursion vs direct enumeration,
//! the eigenrelation of the shape operator, and the induced shape chain.
//!
//! Run with: cargo run --example whittaker_functions

use qrs::qarith::{BigRational, WeightMode};
use qrs::shapes::{enumerate_partitions, l_moves, Partition};
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

    println!("Whittaker values over partitions of 3 (l = 3, a = 1/2,1/4,1/4):");
    for lambda in enumerate_partitions(3, 3) {
        let fast = ctx.psi(&lambda)?;
        let slow = ctx.psi_by_enumeration(&lambda)?;
        assert_eq!(fast, slow);
        println!("  psi({lambda}) = {fast}");
    }

    // The eigenrelation: applying the box-adding operator multiplies psi by
    // the total parameter mass.
    let lambda = Partition::new(vec![2, 1])?;
    let mut lhs = ctx.mode().zero();
    for (row, mu, c) in l_moves(&lambda, 3) {
        println!("  move +e_{row}: coefficient {c}");
        lhs = &lhs + &(&ctx.mode().from_poly(&c) * &ctx.psi(&mu)?);
    }
    let rhs = &ctx.a_total() * &ctx.psi(&lambda)?;
    println!("eigenrelation at {lambda}: LHS == RHS is {}\n", lhs == rhs);

    // With probability parameters the same data gives the exact law of the
    // shape after n insertions.
    let prob = WhittakerContext::probability(
        3,
        vec![rat(1, 2), rat(1, 4), rat(1, 4)],
        WeightMode::exact_at(rat(1, 2))?,
    )?;
    println!("shape law after 4 insertions (q = 1/2):");
    for lambda in enumerate_partitions(4, 3) {
        println!("  nu({lambda}) = {}", prob.nu(&lambda)?);
    }
    Ok(())
}
