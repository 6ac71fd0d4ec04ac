//! Permutation-input statistics: the pair polynomials `zeta`, the
//! per-permutation polynomials `F_sigma`, the shape polynomials `theta`, and
//! the induced probability measure on partitions.
//!
//! Everything here specializes the word machinery to the alphabet `l = n`,
//! so there is no separate insertion code path to drift. The closed forms
//! are the primary implementations; the word sums serve as brute-force
//! oracles.

use crate::insertion::{phi_distribution, rs_correspondence};
use crate::qarith::{BigInt, BigRational, QPolynomial, WeightMode, WeightScalar};
use crate::shapes::{delta_full, enumerate_partitions, Partition};
use crate::tableaux::StandardTableau;
use crate::whittaker::{big_factorial, FLambdaTable};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!(
                    "not a permutation of 1..={n}: {values:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// One-line values, used directly as the insertion word.
    pub fn word(&self) -> &[usize] {
        &self.values
    }

    /// The word `sigma^{-1}(1) ... sigma^{-1}(n)`.
    pub fn inverse_word(&self) -> Vec<usize> {
        let mut inv = vec![0usize; self.n()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        inv
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.values {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// All permutations of `1..=n` in lexicographic order of one-line notation.
pub fn enumerate_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(
        n: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        if current.len() == n {
            out.push(Permutation {
                values: current.clone(),
            });
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// The pair polynomial `zeta_{P,Q}(q) = rho(P) rho(Q) / ((1-q)^n
/// Delta(lambda))` for shape-matched standard tableaux. The division is
/// exact, so the result is a genuine polynomial with integer coefficients.
pub fn zeta(p: &StandardTableau, q: &StandardTableau) -> Result<QPolynomial> {
    if p.shape() != q.shape() {
        return Err(Error::ShapeMismatch);
    }
    let n = p.n() as u64;
    let num = &crate::tableaux::rho(p) * &crate::tableaux::rho(q);
    let den = &QPolynomial::one_minus_q_power(1).pow(n) * &delta_full(&p.shape());
    num.div_exact(&den)
        .ok_or_else(|| Error::NotAPolynomial(format!("zeta at P={p}, Q={q}")))
}

/// Brute-force route for `zeta`: sums `phi_sigma(P, Q)` over all
/// permutations of `1..=n` in the requested mode. Factorial cost; used as
/// the oracle against the closed form.
pub fn zeta_by_words(
    p: &StandardTableau,
    q: &StandardTableau,
    mode: &WeightMode,
) -> Result<WeightScalar> {
    if p.shape() != q.shape() {
        return Err(Error::ShapeMismatch);
    }
    let n = p.n();
    let p_tab = standard_as_tableau(p)?;
    let mut total = mode.zero();
    for sigma in enumerate_permutations(n) {
        let dist = phi_distribution(sigma.word(), n, mode)?;
        total = &total + &dist.get(&p_tab, q);
    }
    Ok(total)
}

fn standard_as_tableau(p: &StandardTableau) -> Result<crate::tableaux::Tableau> {
    crate::tableaux::Tableau::new(p.n().max(1), if p.n() == 0 {
        vec![Partition::empty()]
    } else {
        p.chain().to_vec()
    })
}

/// `F_sigma(q) = zeta_{P(sigma), Q(sigma)}(q)`, where the pair comes from
/// column inserting the one-line word of `sigma`.
pub fn f_sigma(sigma: &Permutation) -> Result<QPolynomial> {
    let n = sigma.n();
    let (p, q) = rs_correspondence(sigma.word(), n.max(1))?;
    let p_std = p.standardize()?;
    zeta(&p_std, &q)
}

/// `theta_lambda(q) = f^lambda(q)^2 / ((1-q)^n Delta(lambda))`; exact
/// division into an integer-coefficient polynomial.
pub fn theta(lambda: &Partition) -> Result<QPolynomial> {
    theta_with(lambda, &mut FLambdaTable::new())
}

fn theta_with(lambda: &Partition, table: &mut FLambdaTable) -> Result<QPolynomial> {
    let n = lambda.size();
    let f = table.get(lambda);
    let num = &f * &f;
    let den = &QPolynomial::one_minus_q_power(1).pow(n) * &delta_full(lambda);
    num.div_exact(&den)
        .ok_or_else(|| Error::NotAPolynomial(format!("theta at {lambda}")))
}

/// `theta` for every partition of `n`, in the deterministic partition order.
pub fn theta_table(n: u64) -> Result<Vec<(Partition, QPolynomial)>> {
    let mut table = FLambdaTable::new();
    enumerate_partitions(n, n.max(1) as usize)
        .into_iter()
        .map(|lambda| {
            let t = theta_with(&lambda, &mut table)?;
            Ok((lambda, t))
        })
        .collect()
}

/// The shape measure `mu_q(lambda) = theta_lambda(q) / n!` at an exact
/// rational q-point in `(-1, 1)`.
pub fn mu_q(lambda: &Partition, q: &BigRational) -> Result<BigRational> {
    if q.abs() >= BigRational::one() {
        return Err(Error::InvalidQPoint(format!(
            "shape measure needs |q| < 1, got {q}"
        )));
    }
    let t = theta(lambda)?.eval_rational(q);
    Ok(t / BigRational::from_integer(big_factorial(lambda.size())))
}

/// Samples `count` shapes of size `n` from the measure `mu_q`, using exact
/// cumulative weights compared against 53-bit uniform draws.
pub fn sample_shapes(
    n: u64,
    q: &BigRational,
    seed: u64,
    count: usize,
) -> Result<Vec<Partition>> {
    if q.abs() >= BigRational::one() || q < &BigRational::zero() {
        return Err(Error::InvalidQPoint(format!(
            "shape sampling needs 0 <= q < 1, got {q}"
        )));
    }
    let shapes = theta_table(n)?;
    let weights: Vec<BigRational> = shapes
        .iter()
        .map(|(_, t)| t.eval_rational(q))
        .collect();
    let total = BigRational::from_integer(big_factorial(n));
    let mut rng = crate::rng::RunRng::master(seed);
    let denom = BigInt::from(1u64 << 53);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        // exact comparison: u = k / 2^53 with k uniform in [0, 2^53)
        let k = (rng.next_f64() * (1u64 << 53) as f64) as u64;
        let u = BigRational::new(BigInt::from(k), denom.clone()) * &total;
        let mut acc = BigRational::zero();
        let mut chosen = shapes.last().expect("nonempty").0.clone();
        for ((lambda, _), w) in shapes.iter().zip(&weights) {
            acc += w;
            if u < acc {
                chosen = lambda.clone();
                break;
            }
        }
        out.push(chosen);
    }
    Ok(out)
}
