//! The q-TASEP particle system: exact jump rates, event-driven simulation,
//! the coupling to the tableau chain, and the analytic last-particle law
//! with certified truncation.
//!
//! Particles sit at strictly decreasing integer positions and jump right by
//! one; particle `i >= 2` jumps at rate `a_i (1 - q^{gap - 1})` where `gap`
//! is the distance to the particle ahead, which vanishes exactly when the
//! particles are adjacent. The tableau chain projects onto these dynamics by
//! reading off the diagonal pattern entries.

use crate::qarith::{BigRational, WeightMode};
use crate::rng::RunRng;
use crate::shapes::enumerate_partitions;
use crate::tableaux::Tableau;
use crate::whittaker::{FLambdaTable, WhittakerContext};
use crate::{Error, Result};
use num_traits::{One, ToPrimitive};
use serde::Serialize;

/// Strictly decreasing particle positions `x_1 > x_2 > ... > x_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParticleConfig {
    positions: Vec<i64>,
}

impl ParticleConfig {
    pub fn new(positions: Vec<i64>) -> Result<Self> {
        if positions.is_empty() || positions.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidProbabilityVector(format!(
                "positions must be strictly decreasing, got {positions:?}"
            )));
        }
        Ok(ParticleConfig { positions })
    }

    /// The step initial condition `x_i = 1 - i`.
    pub fn step(l: usize) -> Self {
        ParticleConfig {
            positions: (0..l as i64).map(|i| -i).collect(),
        }
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Position of the last (leftmost) particle.
    pub fn last(&self) -> i64 {
        *self.positions.last().expect("nonempty configuration")
    }

    fn jump(&mut self, i: usize) {
        self.positions[i] += 1;
        debug_assert!(self.positions.windows(2).all(|w| w[0] > w[1]));
    }
}

/// Jump rates: `r_1 = a_1`, `r_i = a_i (1 - q^{x_{i-1} - x_i - 1})`.
pub fn rates(x: &ParticleConfig, a: &[f64], q: f64) -> Vec<f64> {
    let pos = x.positions();
    (0..pos.len())
        .map(|i| {
            if i == 0 {
                a[0]
            } else {
                let gap = (pos[i - 1] - pos[i] - 1) as u32;
                a[i] * (1.0 - q.powi(gap as i32))
            }
        })
        .collect()
}

/// Event-driven continuous-time simulation from the step initial condition:
/// exponential holding time at the total rate, jump chosen proportionally,
/// rates recomputed after each jump. The trajectory starts at `(0, step)`
/// and ends with the last event at or before `t`.
pub fn simulate_ct(
    l: usize,
    a: &[f64],
    q: f64,
    t: f64,
    rng: &mut RunRng,
) -> Result<Vec<(f64, ParticleConfig)>> {
    check_sim_params(l, a, q)?;
    let mut config = ParticleConfig::step(l);
    let mut now = 0.0;
    let mut trajectory = vec![(now, config.clone())];
    loop {
        let r = rates(&config, a, q);
        let total: f64 = r.iter().sum();
        if total <= 0.0 {
            break;
        }
        now += rng.exponential(total);
        if now > t {
            break;
        }
        let i = rng.categorical(&r);
        config.jump(i);
        trajectory.push((now, config.clone()));
    }
    Ok(trajectory)
}

/// Final configuration at time `t` without storing the trajectory.
pub fn simulate_endpoint(
    l: usize,
    a: &[f64],
    q: f64,
    t: f64,
    rng: &mut RunRng,
) -> Result<ParticleConfig> {
    check_sim_params(l, a, q)?;
    let mut config = ParticleConfig::step(l);
    let mut now = 0.0;
    loop {
        let r = rates(&config, a, q);
        let total: f64 = r.iter().sum();
        if total <= 0.0 {
            break;
        }
        now += rng.exponential(total);
        if now > t {
            break;
        }
        config.jump(rng.categorical(&r));
    }
    Ok(config)
}

fn check_sim_params(l: usize, a: &[f64], q: f64) -> Result<()> {
    if l == 0 || a.len() != l {
        return Err(Error::Usage(format!("need {l} rates, got {}", a.len())));
    }
    if a.iter().any(|&x| x <= 0.0) {
        return Err(Error::InvalidProbabilityVector(
            "jump parameters must be positive".into(),
        ));
    }
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidQPoint(format!(
            "simulation requires 0 <= q < 1, got {q}"
        )));
    }
    Ok(())
}

/// Projects a tableau chain onto particle positions:
/// `X_i = lambda^i_i - i + 1` where `lambda^i` is the shape of the level-`i`
/// subtableau. The empty tableau maps to the step initial condition.
pub fn discrete_projection(chain: &[Tableau]) -> Vec<ParticleConfig> {
    chain
        .iter()
        .map(|p| {
            let positions = (1..=p.alphabet())
                .map(|i| p.level(i).part(i) as i64 - i as i64 + 1)
                .collect();
            ParticleConfig::new(positions).expect("interlacing keeps positions decreasing")
        })
        .collect()
}

/// The law of the last particle via the Poissonized shape measure:
/// `P(X_l(t) = m - l + 1)` is `e^{-t}` times the sum over shapes with
/// `lambda_l = m` of `t^{|lambda|}/|lambda|! nu(lambda)`.
///
/// The series is truncated at the smallest `N` whose Poisson(t) tail mass is
/// at most `eps`, a certified bound because the shape masses per size form a
/// probability vector. Requires the rates to sum to one (the Poisson clock
/// has unit rate).
pub fn last_particle_law(
    m: u64,
    t: f64,
    ctx: &WhittakerContext,
    eps: f64,
) -> Result<(f64, f64)> {
    let table = &mut FLambdaTable::new();
    last_particle_law_with(m, t, ctx, eps, table)
}

fn check_unit_rate(ctx: &WhittakerContext) -> Result<()> {
    let total: BigRational = ctx.params().iter().sum();
    if !total.is_one() {
        return Err(Error::NonUnitTotalRate);
    }
    Ok(())
}

/// Smallest `N` with `P(Poisson(t) > N) <= eps`.
pub fn poisson_truncation(t: f64, eps: f64) -> u64 {
    let mut term = (-t).exp();
    let mut cum = term;
    let mut n = 0u64;
    while 1.0 - cum > eps && n < 10_000 {
        n += 1;
        term *= t / n as f64;
        cum += term;
    }
    n
}

fn last_particle_law_with(
    m: u64,
    t: f64,
    ctx: &WhittakerContext,
    eps: f64,
    table: &mut FLambdaTable,
) -> Result<(f64, f64)> {
    check_unit_rate(ctx)?;
    let n_max = poisson_truncation(t, eps);
    Ok((
        last_particle_series(m, t, ctx, n_max, table)?,
        eps,
    ))
}

fn last_particle_series(
    m: u64,
    t: f64,
    ctx: &WhittakerContext,
    n_max: u64,
    table: &mut FLambdaTable,
) -> Result<f64> {
    let l = ctx.alphabet();
    let mut total = 0.0;
    // Poisson(t) factors accumulated iteratively: e^{-t} t^k / k!
    let mut pois = (-t).exp();
    for k in 0..=n_max {
        if k > 0 {
            pois *= t / k as f64;
        }
        if k < m * l as u64 {
            continue;
        }
        let mut shape_mass = 0.0;
        for lambda in enumerate_partitions(k, l) {
            if lambda.part(l) != m {
                continue;
            }
            let nu = ctx.nu_with(&lambda, table)?;
            shape_mass += nu.to_f64().ok_or_else(|| {
                Error::InvalidWeightMode("last-particle series needs a numeric q-point".into())
            })?;
        }
        total += pois * shape_mass;
    }
    Ok(total)
}

/// One row of the Monte Carlo / series comparison.
#[derive(Debug, Clone, Serialize)]
pub struct McRow {
    /// `m = lambda_l`, i.e. the last particle sits at `m - l + 1`.
    pub m: u64,
    pub formula: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct McReport {
    pub l: usize,
    pub t: f64,
    pub runs: u64,
    pub eps: f64,
    pub min_mass: f64,
    pub rows: Vec<McRow>,
    pub passed: bool,
}

/// Runs `runs` independent simulations to time `t` and compares each
/// last-particle bin with formula mass above `min_mass` against the series
/// at the four-sigma binomial tolerance. Streams are split per run from the
/// master seed, so the result is independent of the thread count.
pub fn compare_mc_vs_formula(
    ctx: &WhittakerContext,
    t: f64,
    runs: u64,
    eps: f64,
    min_mass: f64,
    seed: u64,
    threads: usize,
) -> Result<McReport> {
    check_unit_rate(ctx)?;
    let l = ctx.alphabet();
    let a = ctx.params_f64();
    let q = match ctx.mode() {
        WeightMode::FloatAtQ(q) => *q,
        WeightMode::ExactAtQ(q) => q.to_f64().ok_or(Error::InvalidQPoint(q.to_string()))?,
        WeightMode::Symbolic => {
            return Err(Error::InvalidWeightMode(
                "simulation needs a numeric q-point".into(),
            ))
        }
    };

    // histogram over m = x_l + l - 1, merged across worker threads
    let threads = threads.max(1);
    let chunk = runs.div_ceil(threads as u64);
    let histograms = std::thread::scope(|scope| -> Result<Vec<Vec<u64>>> {
        let mut handles = Vec::new();
        let mut start = 0u64;
        while start < runs {
            let end = (start + chunk).min(runs);
            let a = a.clone();
            handles.push(scope.spawn(move || {
                let mut hist: Vec<u64> = Vec::new();
                for run in start..end {
                    let mut rng = RunRng::stream(seed, run);
                    let config = simulate_endpoint(l, &a, q, t, &mut rng)
                        .expect("validated parameters");
                    let m = (config.last() + l as i64 - 1) as usize;
                    if hist.len() <= m {
                        hist.resize(m + 1, 0);
                    }
                    hist[m] += 1;
                }
                hist
            }));
            start = end;
        }
        Ok(handles.into_iter().map(|h| h.join().unwrap()).collect())
    })?;
    let mut hist: Vec<u64> = Vec::new();
    for partial in histograms {
        if hist.len() < partial.len() {
            hist.resize(partial.len(), 0);
        }
        for (i, c) in partial.into_iter().enumerate() {
            hist[i] += c;
        }
    }

    let n_max = poisson_truncation(t, eps);
    let m_max = (n_max / l as u64).max(hist.len() as u64);
    let mut table = FLambdaTable::new();
    let mut rows = Vec::new();
    for m in 0..=m_max {
        let formula = last_particle_series(m, t, ctx, n_max, &mut table)?;
        if formula <= min_mass {
            continue;
        }
        let count = hist.get(m as usize).copied().unwrap_or(0);
        let empirical = count as f64 / runs as f64;
        let stderr = (formula * (1.0 - formula) / runs as f64).sqrt();
        let pass = (empirical - formula).abs() <= 4.0 * stderr;
        rows.push(McRow {
            m,
            formula,
            empirical,
            stderr,
            pass,
        });
    }
    let passed = rows.iter().all(|r| r.pass);
    Ok(McReport {
        l,
        t,
        runs,
        eps,
        min_mass,
        rows,
        passed,
    })
}
