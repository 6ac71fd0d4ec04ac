//! Executable identity checks with counterexample reporting and
//! negative-control mutations.
//!
//! Every check here sweeps a finite family exactly (symbolic or exact-at-q
//! arithmetic) and reports each violated identity as a counterexample. Each
//! check accepts a mutation switch that must make it fail; a suite that
//! cannot fail verifies nothing.

use crate::insertion::{column_insert, phi_distribution_variant, q_insert_outcomes_variant, KernelVariant};
use crate::qarith::{BigRational, QExp, QPolynomial, WeightMode, WeightScalar};
use crate::shapes::{
    delta_full, delta_scalar, enumerate_partitions, interlacings_below, l_entry, l_moves,
    partitions_up_to, Partition,
};
use crate::tableaux::{
    enumerate_standard, enumerate_tableaux, kappa, kappa_scalar, rho, rho_scalar, StandardTableau,
    Tableau,
};
use crate::whittaker::{f_lambda_q, k_lambda_mu, psi_limit_check, FLambdaTable, WhittakerContext};
use crate::Result;
use serde::Serialize;
use std::collections::BTreeMap;

/// One violated identity.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub context: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one verification sweep.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub checked: u64,
    pub failures: Vec<Counterexample>,
}

impl VerifyReport {
    fn new(name: &str) -> Self {
        VerifyReport {
            name: name.to_string(),
            params: Vec::new(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, context: impl FnOnce() -> String, lhs: &WeightScalar, rhs: &WeightScalar) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(Counterexample {
                context: context(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: PASS ({} checks)", self.name, self.checked)
        } else {
            format!(
                "{}: FAIL ({} of {} checks violated)",
                self.name,
                self.failures.len(),
                self.checked
            )
        }
    }
}

pub fn mode_label(mode: &WeightMode) -> String {
    match mode {
        WeightMode::Symbolic => "symbolic".into(),
        WeightMode::ExactAtQ(q) => format!("exact:q={q}"),
        WeightMode::FloatAtQ(q) => format!("float:q={q}"),
    }
}

/// All words of length `n` over the alphabet `1..=l`, in counting order.
pub fn all_words(l: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(l.pow(n as u32));
    let mut word = vec![1usize; n];
    loop {
        out.push(word.clone());
        let mut i = 0;
        while i < n {
            if word[i] < l {
                word[i] += 1;
                break;
            }
            word[i] = 1;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

/// The type (letter multiplicities) of a word over `1..=l`.
pub fn word_type(word: &[usize], l: usize) -> Vec<u64> {
    let mut ty = vec![0u64; l];
    for &k in word {
        ty[k - 1] += 1;
    }
    ty
}

/// All compositions of `n` into `l` nonnegative parts.
fn compositions(n: u64, l: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(l);
    fn rec(remaining: u64, slots: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
            return;
        }
        for v in 0..=remaining {
            current.push(v);
            rec(remaining - v, slots - 1, current, out);
            current.pop();
        }
    }
    rec(n, l, &mut current, &mut out);
    out
}

fn run_chunks<T: Sync, R: Send>(
    items: &[T],
    threads: usize,
    f: impl Fn(&[T]) -> R + Sync,
) -> Vec<R> {
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return vec![f(items)];
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| f(part)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

/// Stochasticity of the insertion kernel: the outcome weights of every
/// insertion sum to one, and at `q = 0` the support degenerates to classic
/// column insertion.
pub fn verify_stochasticity(
    l: usize,
    max_size: u64,
    mode: &WeightMode,
    variant: KernelVariant,
    threads: usize,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("stochasticity")
        .param("l", l)
        .param("max_size", max_size)
        .param("mode", mode_label(mode))
        .param("variant", format!("{variant:?}"));
    let zero_mode = WeightMode::exact_at(BigRational::from_integer(0.into()))?;

    let mut tableaux = Vec::new();
    for lambda in partitions_up_to(max_size, l) {
        tableaux.extend(enumerate_tableaux(&lambda, l));
    }

    let results = run_chunks(&tableaux, threads, |chunk| -> Result<(u64, Vec<Counterexample>)> {
        let mut checked = 0;
        let mut failures = Vec::new();
        for p in chunk {
            for k in 1..=l {
                let outcomes = q_insert_outcomes_variant(p, k, mode, variant)?;
                let total = outcomes.iter().fold(mode.zero(), |acc, o| &acc + &o.weight);
                checked += 1;
                if !total.is_one() {
                    failures.push(Counterexample {
                        context: format!("mass of insert {k} into {p}"),
                        lhs: total.to_string(),
                        rhs: "1".into(),
                    });
                }
                // q = 0 degeneration
                let (classic, _) = column_insert(p, k)?;
                let zero_out = q_insert_outcomes_variant(p, k, &zero_mode, variant)?;
                let live: Vec<_> = zero_out.iter().filter(|o| !o.weight.is_zero()).collect();
                checked += 1;
                if live.len() != 1 || live[0].tableau != classic || !live[0].weight.is_one() {
                    failures.push(Counterexample {
                        context: format!("q=0 support of insert {k} into {p}"),
                        lhs: format!("{} live outcomes", live.len()),
                        rhs: format!("point mass at {classic}"),
                    });
                }
            }
        }
        Ok((checked, failures))
    });
    for r in results {
        let (checked, failures) = r?;
        report.checked += checked;
        report.failures.extend(failures);
    }
    Ok(report)
}

/// The word-sum identity: summing `a^w phi_w(P, Q)` over all words equals
/// `(lambda_l)_q^{-1} a^P kappa(P) rho(Q)` for every shape-matched pair.
pub fn verify_theorem2(
    ctx: &WhittakerContext,
    n: usize,
    variant: KernelVariant,
    threads: usize,
) -> Result<VerifyReport> {
    let l = ctx.alphabet();
    let mode = ctx.mode();
    let mut report = VerifyReport::new("theorem2")
        .param("l", l)
        .param("n", n)
        .param("mode", mode_label(mode))
        .param("variant", format!("{variant:?}"));

    let words = all_words(l, n);
    type PairMap = BTreeMap<(Tableau, StandardTableau), WeightScalar>;
    let partials = run_chunks(&words, threads, |chunk| -> Result<PairMap> {
        let mut acc: PairMap = BTreeMap::new();
        for word in chunk {
            let aw = ctx.a_pow(&word_type(word, l));
            for ((p, q), wt) in phi_distribution_variant(word, l, mode, variant)?.iter() {
                let contribution = &aw * wt;
                acc.entry((p.clone(), q.clone()))
                    .and_modify(|v| *v = &*v + &contribution)
                    .or_insert(contribution);
            }
        }
        Ok(acc)
    });
    let mut lhs_map: PairMap = BTreeMap::new();
    for partial in partials {
        for (key, value) in partial? {
            lhs_map
                .entry(key)
                .and_modify(|v| *v = &*v + &value)
                .or_insert(value);
        }
    }

    for lambda in enumerate_partitions(n as u64, l) {
        let poch_last = mode.poch(lambda.part(l));
        for p in enumerate_tableaux(&lambda, l) {
            let ap_kappa = &ctx.a_pow(&p.type_vector()) * &kappa_scalar(&p, mode);
            for q in enumerate_standard(&lambda) {
                let rhs = (&ap_kappa * &rho_scalar(&q, mode)).try_div(&poch_last)?;
                let lhs = lhs_map
                    .remove(&(p.clone(), q.clone()))
                    .unwrap_or_else(|| mode.zero());
                report.check(|| format!("pair P={p}, Q={q}"), &lhs, &rhs);
            }
        }
    }
    for ((p, q), w) in lhs_map {
        if !w.is_zero() {
            report.failures.push(Counterexample {
                context: format!("unexpected support at P={p}, Q={q}"),
                lhs: w.to_string(),
                rhs: "0".into(),
            });
        }
    }
    Ok(report)
}

/// The intertwining `KM = LK` of the tableau kernel with the shape kernel,
/// checked entrywise over all shapes up to the size bound.
pub fn verify_intertwining(
    ctx: &WhittakerContext,
    max_size: u64,
    variant: KernelVariant,
) -> Result<VerifyReport> {
    let l = ctx.alphabet();
    let mode = ctx.mode();
    let mut report = VerifyReport::new("intertwining")
        .param("l", l)
        .param("max_size", max_size)
        .param("mode", mode_label(mode))
        .param("variant", format!("{variant:?}"));

    for lambda in partitions_up_to(max_size, l) {
        let mut km: BTreeMap<Tableau, WeightScalar> = BTreeMap::new();
        for p in enumerate_tableaux(&lambda, l) {
            let kp = ctx.k_entry(&lambda, &p);
            if kp.is_zero() {
                continue;
            }
            for (target, m) in ctx.m_row(&p, variant)? {
                let w = &kp * &m;
                km.entry(target)
                    .and_modify(|v| *v = &*v + &w)
                    .or_insert(w);
            }
        }
        let mut lk: BTreeMap<Tableau, WeightScalar> = BTreeMap::new();
        for (_, mu, c) in l_moves(&lambda, l) {
            let cs = mode.from_poly(&c);
            for target in enumerate_tableaux(&mu, l) {
                let w = &cs * &ctx.k_entry(&mu, &target);
                lk.entry(target)
                    .and_modify(|v| *v = &*v + &w)
                    .or_insert(w);
            }
        }
        let keys: std::collections::BTreeSet<_> = km.keys().chain(lk.keys()).cloned().collect();
        for target in keys {
            let a = km.get(&target).cloned().unwrap_or_else(|| mode.zero());
            let b = lk.get(&target).cloned().unwrap_or_else(|| mode.zero());
            report.check(|| format!("KM vs LK at lambda={lambda}, target={target}"), &a, &b);
        }
    }
    Ok(report)
}

/// The recursive two-level intertwining `K-hat M-hat = L K-hat`, checked
/// entrywise on interlacing pairs.
pub fn verify_intertwining_recursive(
    ctx: &WhittakerContext,
    max_size: u64,
    variant: KernelVariant,
) -> Result<VerifyReport> {
    let l = ctx.alphabet();
    let mode = ctx.mode();
    let mut report = VerifyReport::new("intertwining-recursive")
        .param("l", l)
        .param("max_size", max_size)
        .param("mode", mode_label(mode))
        .param("variant", format!("{variant:?}"));

    for top in partitions_up_to(max_size, l) {
        let sources = interlacings_below(&top, l - 1);
        for k in top.addable_rows(l) {
            let new_top = top.add_box(k).expect("addable");
            for new_below in interlacings_below(&new_top, l - 1) {
                let mut lhs = mode.zero();
                for below in &sources {
                    let hk = ctx.hat_k_entry(&top, below)?;
                    let hm =
                        ctx.hat_m_entry((&top, below), (&new_top, &new_below), variant)?;
                    lhs = &lhs + &(&hk * &hm);
                }
                let rhs = &mode.from_poly(&l_entry(&top, &new_top, l))
                    * &ctx.hat_k_entry(&new_top, &new_below)?;
                report.check(
                    || format!("hat pair lambda={top}, +e_{k}, below={new_below}"),
                    &lhs,
                    &rhs,
                );
            }
        }
    }
    Ok(report)
}

/// The eigenrelation: `sum_i c_i(lambda) Psi(lambda + e_i) = (sum_i a_i)
/// Psi(lambda)`. The mutation drops the `+1` from the coefficient exponents.
pub fn verify_eigen(ctx: &WhittakerContext, max_size: u64, mutate: bool) -> Result<VerifyReport> {
    let l = ctx.alphabet();
    let mode = ctx.mode();
    let mut report = VerifyReport::new("eigenrelation")
        .param("l", l)
        .param("max_size", max_size)
        .param("mode", mode_label(mode))
        .param("mutated", mutate);

    for lambda in partitions_up_to(max_size, l) {
        let lhs = if mutate {
            // wrong coefficient exponents (the +1 dropped)
            let mut acc = mode.zero();
            for (i, mu, c) in l_moves(&lambda, l) {
                let c = if i < l {
                    QPolynomial::one_minus_q_power(lambda.part(i) - lambda.part(i + 1))
                } else {
                    c
                };
                acc = &acc + &(&mode.from_poly(&c) * &ctx.psi(&mu)?);
            }
            acc
        } else {
            crate::shapes::l_apply(&lambda, l, mode, |mu| ctx.psi(mu))?
        };
        let rhs = &ctx.a_total() * &ctx.psi(&lambda)?;
        report.check(|| format!("eigenrelation at lambda={lambda}"), &lhs, &rhs);
    }
    Ok(report)
}

/// The Cauchy-Littlewood normalization: the shape law `nu` sums to
/// `(sum_i a_i)^n` over partitions of `n` (to one in probability contexts).
/// The mutation computes `f^lambda` with shifted exponents.
pub fn verify_cauchy(ctx: &WhittakerContext, max_n: u64, mutate: bool) -> Result<VerifyReport> {
    let mode = ctx.mode();
    let mut report = VerifyReport::new("cauchy-littlewood")
        .param("l", ctx.alphabet())
        .param("max_n", max_n)
        .param("mode", mode_label(mode))
        .param("mutated", mutate);
    let mut table = if mutate {
        FLambdaTable::mutated()
    } else {
        FLambdaTable::new()
    };
    for n in 0..=max_n {
        let mut total = mode.zero();
        for lambda in enumerate_partitions(n, ctx.alphabet()) {
            total = &total + &ctx.nu_with(&lambda, &mut table)?;
        }
        let expect = ctx.a_total().pow(n);
        report.check(|| format!("sum of nu over partitions of {n}"), &total, &expect);
    }
    Ok(report)
}

/// The combinatorial corollaries of the word-sum identity: for each shape,
/// the `H`-sums recover `Delta_l(lambda) Psi(lambda)` and the q-Kostka
/// polynomials, the `G`-sums recover `f^lambda(q)`, and (when `l = n`) the
/// permutation average recovers `f^lambda(q)/(1-q)^n`.
pub fn verify_corollary3(
    ctx: &WhittakerContext,
    n: usize,
    variant: KernelVariant,
) -> Result<VerifyReport> {
    let l = ctx.alphabet();
    let mode = ctx.mode();
    let mut report = VerifyReport::new("corollary3")
        .param("l", l)
        .param("n", n)
        .param("mode", mode_label(mode))
        .param("variant", format!("{variant:?}"));

    // accumulate the word sums once
    let mut by_q: BTreeMap<StandardTableau, WeightScalar> = BTreeMap::new();
    let mut by_q_type: BTreeMap<(StandardTableau, Vec<u64>), WeightScalar> = BTreeMap::new();
    let mut by_p: BTreeMap<Tableau, WeightScalar> = BTreeMap::new();
    for word in all_words(l, n) {
        let ty = word_type(&word, l);
        let aw = ctx.a_pow(&ty);
        for ((p, q), wt) in phi_distribution_variant(&word, l, mode, variant)?.iter() {
            let weighted = &aw * wt;
            by_q
                .entry(q.clone())
                .and_modify(|v| *v = &*v + &weighted)
                .or_insert(weighted);
            by_q_type
                .entry((q.clone(), ty.clone()))
                .and_modify(|v| *v = &*v + wt)
                .or_insert_with(|| wt.clone());
            by_p
                .entry(p.clone())
                .and_modify(|v| *v = &*v + wt)
                .or_insert_with(|| wt.clone());
        }
    }

    let one_minus_q_n = mode.one_minus_q_pow(QExp::Finite(1)).pow(n as u64);
    for lambda in enumerate_partitions(n as u64, l) {
        let delta_all = mode.from_poly(&delta_full(&lambda));
        let p_lambda = &delta_scalar(&lambda, l, mode)? * &ctx.psi(&lambda)?;
        let f_scalar = mode.from_poly(&f_lambda_q(&lambda));
        for q in enumerate_standard(&lambda) {
            let rho_q = rho_scalar(&q, mode);
            let sum = by_q.get(&q).cloned().unwrap_or_else(|| mode.zero());
            let lhs = (&delta_all * &sum).try_div(&rho_q)?;
            report.check(
                || format!("sum_w H_Q(w) a^w at lambda={lambda}, Q={q}"),
                &lhs,
                &p_lambda,
            );
            for mu in compositions(n as u64, l) {
                let sum = by_q_type
                    .get(&(q.clone(), mu.clone()))
                    .cloned()
                    .unwrap_or_else(|| mode.zero());
                let lhs = (&delta_all * &sum).try_div(&rho_q)?;
                let rhs = mode.from_poly(&k_lambda_mu(&lambda, &mu, l)?);
                report.check(
                    || format!("type-restricted H sum at lambda={lambda}, Q={q}, mu={mu:?}"),
                    &lhs,
                    &rhs,
                );
            }
            // permutation average: for l = n the type (1,...,1) sum gives
            // f^lambda(q)/(1-q)^n
            if l == n {
                let ones = vec![1u64; l];
                let sum = by_q_type
                    .get(&(q.clone(), ones))
                    .cloned()
                    .unwrap_or_else(|| mode.zero());
                let lhs = (&delta_all * &sum).try_div(&rho_q)?;
                let rhs = f_scalar.try_div(&one_minus_q_n)?;
                report.check(
                    || format!("permutation average at lambda={lambda}, P={q}"),
                    &lhs,
                    &rhs,
                );
            }
        }
        let poch_last = mode.poch(lambda.part(l));
        for p in enumerate_tableaux(&lambda, l) {
            let sum = by_p.get(&p).cloned().unwrap_or_else(|| mode.zero());
            let lhs = (&poch_last * &sum).try_div(&kappa_scalar(&p, mode))?;
            report.check(
                || format!("sum_w G_P(w) at lambda={lambda}, P={p}"),
                &lhs,
                &f_scalar,
            );
        }
    }
    Ok(report)
}

/// The standardization identity `kappa(P) (1-q)^n Delta_l(lambda) =
/// rho(P-hat)` over every distinct-entry tableau in range. The mutation
/// shifts the `rho` exponents.
pub fn verify_eq3(max_n: u64, max_l: usize, mutate: bool) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("standardization-identity")
        .param("max_n", max_n)
        .param("max_l", max_l)
        .param("mutated", mutate);
    let one_minus_q = QPolynomial::one_minus_q_power(1);
    for n in 1..=max_n {
        for l in (n as usize)..=max_l {
            for lambda in enumerate_partitions(n, l) {
                for p in enumerate_tableaux(&lambda, l) {
                    if p.distinct_entries().is_none() {
                        continue;
                    }
                    let hat = p.standardize()?;
                    let mut rho_hat = rho(&hat);
                    if mutate {
                        rho_hat = mutated_rho(&hat);
                    }
                    let lhs = &kappa(&p)
                        * &crate::qarith::QRationalFunction::from_poly(
                            &one_minus_q.pow(n) * &crate::shapes::delta(&lambda, l)?,
                        );
                    let rhs = crate::qarith::QRationalFunction::from_poly(rho_hat);
                    report.checked += 1;
                    if lhs != rhs {
                        report.failures.push(Counterexample {
                            context: format!("standardization identity at P={p} (l={l})"),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

fn mutated_rho(q: &StandardTableau) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for i in 1..=q.n() {
        let r = q.growth_row(i);
        let shape = q.level(i);
        acc = &acc * &QPolynomial::one_minus_q_power(shape.part(r) - shape.part(r + 1) + 1);
    }
    acc
}

/// Convergence of the uniform-parameter `psi` toward its `l -> infinity`
/// limit, as exact rational errors along a doubling sequence.
pub fn verify_prop1(
    lambda: &Partition,
    q: &BigRational,
    ls: &[usize],
    inflate_kernel: bool,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("psi-limit")
        .param("lambda", lambda)
        .param("q", q)
        .param("ls", format!("{ls:?}"))
        .param("mutated", inflate_kernel);
    let result = psi_limit_check(lambda, q, ls, inflate_kernel)?;
    report.checked = ls.len().saturating_sub(1) as u64;
    if !result.strictly_decreasing {
        let errs: Vec<String> = result
            .errors
            .iter()
            .map(|(l, e)| format!("l={l}: {e}"))
            .collect();
        report.failures.push(Counterexample {
            context: format!("errors not strictly decreasing for lambda={lambda}"),
            lhs: errs.join("; "),
            rhs: "strictly decreasing sequence".into(),
        });
    }
    Ok(report)
}
