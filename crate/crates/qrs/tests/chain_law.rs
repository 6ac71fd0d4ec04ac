//! The law of the shape chain driven by random letters: exact brute force at
//! q = 0 against the classic correspondence, and a seeded Monte Carlo check
//! against the analytic shape law at q = 1/2.

use num_traits::ToPrimitive;
use qrs::insertion::{rs_correspondence, run_tableau_chain};
use qrs::qarith::{BigRational, WeightMode};
use qrs::shapes::{enumerate_partitions, Partition};
use qrs::verify::all_words;
use qrs::whittaker::WhittakerContext;
use std::collections::BTreeMap;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// At q = 0 the chain is the classic correspondence on a uniform random
/// word, so the exact shape law is a word count. Zero tolerance.
#[test]
fn chain_at_q_zero_matches_word_counts() {
    let n = 4usize;
    let l = 2usize;
    let ctx = WhittakerContext::probability(
        l,
        vec![rat(1, 2), rat(1, 2)],
        WeightMode::exact_at(rat(0, 1)).unwrap(),
    )
    .unwrap();

    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for word in all_words(l, n) {
        let (p, _) = rs_correspondence(&word, l).unwrap();
        *counts.entry(p.shape().clone()).or_insert(0) += 1;
    }
    let total = (l as u64).pow(n as u32);
    for lambda in enumerate_partitions(n as u64, l) {
        let nu = ctx.nu(&lambda).unwrap();
        let expect = rat(counts.get(&lambda).copied().unwrap_or(0) as i64, total as i64);
        assert_eq!(nu.as_exact().unwrap(), &expect, "shape {lambda}");
    }
}

/// The empirical shape distribution of the sampled chain after four steps
/// agrees with the analytic law within the binomial four-sigma band.
#[test]
fn chain_shape_law_matches_nu() {
    let l = 2usize;
    let n = 4usize;
    let runs = 40_000u64;
    let mode = WeightMode::float_at(0.5).unwrap();
    let ctx = WhittakerContext::probability(
        l,
        vec![rat(1, 2), rat(1, 2)],
        WeightMode::exact_at(rat(1, 2)).unwrap(),
    )
    .unwrap();

    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for run in 0..runs {
        let mut rng = qrs::rng::RunRng::stream(31, run);
        let chain = run_tableau_chain(l, &[0.5, 0.5], &mode, n, &mut rng).unwrap();
        *counts
            .entry(chain.last().unwrap().shape().clone())
            .or_insert(0) += 1;
    }

    for lambda in enumerate_partitions(n as u64, l) {
        let p = ctx.nu(&lambda).unwrap().as_exact().unwrap().to_f64().unwrap();
        let emp = counts.get(&lambda).copied().unwrap_or(0) as f64 / runs as f64;
        let sigma = (p * (1.0 - p) / runs as f64).sqrt();
        assert!(
            (emp - p).abs() <= 4.0 * sigma,
            "shape {lambda}: empirical {emp} vs exact {p}"
        );
    }
}
