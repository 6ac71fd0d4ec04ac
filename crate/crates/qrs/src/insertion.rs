//! Column insertion, its q-weighted generalization, and the word-weight
//! recursion.
//!
//! Inserting a letter `k` into a tableau `P` traces a down/right lattice path
//! over the levels `k..=l` of the pattern: at level `i` the path enters at
//! the row where level `i-1` placed its box, may step down any number of
//! rows, and places its box where it steps right. The horizontal step at row
//! `j` carries the weight `f(i, j)` and the down step `1 - f(i, j)`, where
//! `f` is the push weight `f0` except at the entry row of a bumped level,
//! where it is the bump weight `f1`. Row one forces a horizontal step, so the
//! weights over all outcomes sum to one.

use crate::qarith::{QExp, WeightMode, WeightScalar};
use crate::rng::RunRng;
use crate::tableaux::{StandardTableau, Tableau};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// The two local weight functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FKind {
    /// Push weight `f0(i, j) = 1 - q^{lambda^{i-1}_{j-1} - lambda^i_j}`.
    F0,
    /// Bump weight `f1(i, j) = f0(i, j) / (1 - q^{lambda^{i-1}_{j-1} - lambda^{i-1}_j})`.
    F1,
}

/// Controlled mutations of the insertion kernel, used as negative controls in
/// the verification suites. `Standard` is the real kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelVariant {
    #[default]
    Standard,
    /// Evaluates every bump weight `f1` as the push weight `f0`. Outcome
    /// weights still sum to one, but the kernel is wrong.
    F1AsF0,
    /// Scales every down-step weight by `q`, breaking the complementarity
    /// of horizontal and down steps (weights no longer sum to one).
    DampedDown,
}

/// Local weight `f0` or `f1` at column `i`, row `j` of the pattern, with the
/// boundary conventions: row one gives 1, and a q-power referencing an
/// undefined pattern entry vanishes.
///
/// The division in `f1` is guarded: a vanishing denominator at a reachable
/// site would be an invariant violation and is reported, never guessed.
pub fn local_weight(
    p: &Tableau,
    i: usize,
    j: usize,
    kind: FKind,
    mode: &WeightMode,
) -> Result<WeightScalar> {
    if i == 0 || i > p.alphabet() || j == 0 || j > i {
        return Err(Error::Usage(format!(
            "local weight needs 1 <= j <= i <= l, got i={i}, j={j}"
        )));
    }
    f_weight(p, i, j, kind == FKind::F1, mode, KernelVariant::Standard)
}

fn f_weight(
    p: &Tableau,
    i: usize,
    j: usize,
    use_f1: bool,
    mode: &WeightMode,
    variant: KernelVariant,
) -> Result<WeightScalar> {
    if j == 1 {
        return Ok(mode.one());
    }
    let num_gap = QExp::gap(p.pattern_entry(i - 1, j - 1), p.pattern_entry(i, j));
    let num = mode.one_minus_q_pow(num_gap);
    if !use_f1 || variant == KernelVariant::F1AsF0 {
        return Ok(num);
    }
    let den_gap = QExp::gap(p.pattern_entry(i - 1, j - 1), p.pattern_entry(i - 1, j));
    if den_gap.is_zero() {
        return Err(Error::BumpDenominatorVanished { level: i, row: j });
    }
    let den = mode.one_minus_q_pow(den_gap);
    num.try_div(&den)
}

fn down_weight(
    f: &WeightScalar,
    mode: &WeightMode,
    variant: KernelVariant,
) -> WeightScalar {
    let complement = &mode.one() - f;
    match variant {
        KernelVariant::DampedDown => &complement * &mode.q_pow(QExp::Finite(1)),
        _ => complement,
    }
}

/// The insertion path of one letter: the starting level `k` and the weakly
/// decreasing rows `j_k >= j_{k+1} >= ... >= j_l`, together with the edge
/// weight factors whose product is the outcome weight.
#[derive(Debug, Clone)]
pub struct InsertionPath {
    pub start: usize,
    pub rows: Vec<usize>,
    pub edge_factors: Vec<WeightScalar>,
}

impl InsertionPath {
    /// The row receiving the final box, i.e. where the shape grows.
    pub fn final_row(&self) -> usize {
        *self.rows.last().expect("nonempty path")
    }

    pub fn weight(&self, mode: &WeightMode) -> WeightScalar {
        self.edge_factors
            .iter()
            .fold(mode.one(), |acc, f| &acc * f)
    }
}

/// One weighted result of a q-insertion.
#[derive(Debug, Clone)]
pub struct WeightedOutcome {
    pub tableau: Tableau,
    pub weight: WeightScalar,
    pub path: InsertionPath,
}

fn check_letter(p: &Tableau, k: usize) -> Result<()> {
    if k == 0 || k > p.alphabet() {
        return Err(Error::LetterOutOfRange {
            letter: k,
            alphabet: p.alphabet(),
        });
    }
    Ok(())
}

/// Classic column insertion. Returns the new tableau and the insertion path
/// (the `q = 0` path, the highest in the support of the q-kernel).
pub fn column_insert(p: &Tableau, k: usize) -> Result<(Tableau, InsertionPath)> {
    check_letter(p, k)?;
    let l = p.alphabet();
    let mut rows = Vec::with_capacity(l - k + 1);
    let mut entry = k;
    for i in k..=l {
        let mut j = 1;
        for m in (2..=entry).rev() {
            let above = p.level(i - 1).part(m - 1);
            if above > p.level(i).part(m) {
                j = m;
                break;
            }
        }
        rows.push(j);
        entry = j;
    }
    let tableau = p
        .try_apply_growth(k, &rows)
        .expect("insertion path gives a valid growth");
    Ok((
        tableau,
        InsertionPath {
            start: k,
            rows,
            edge_factors: Vec::new(),
        },
    ))
}

/// The column-insertion Robinson-Schensted correspondence: `P` by iterated
/// insertion of the word, `Q` recording which shape grew at each step.
pub fn rs_correspondence(word: &[usize], l: usize) -> Result<(Tableau, StandardTableau)> {
    let mut p = Tableau::empty(l.max(1));
    let mut q = StandardTableau::empty();
    for &k in word {
        let (next, path) = column_insert(&p, k)?;
        q = q.extend(path.final_row())?;
        p = next;
    }
    Ok((p, q))
}

/// All outcomes of q-inserting `k` into `P` with their exact weights.
///
/// The outcomes appear in depth-first order preferring horizontal steps, so
/// the classic path comes first. Weights sum to one; at `q = 0` the single
/// surviving outcome is the classic insertion.
pub fn q_insert_outcomes(
    p: &Tableau,
    k: usize,
    mode: &WeightMode,
) -> Result<Vec<WeightedOutcome>> {
    q_insert_outcomes_variant(p, k, mode, KernelVariant::Standard)
}

/// [`q_insert_outcomes`] with a kernel mutation for negative controls.
pub fn q_insert_outcomes_variant(
    p: &Tableau,
    k: usize,
    mode: &WeightMode,
    variant: KernelVariant,
) -> Result<Vec<WeightedOutcome>> {
    check_letter(p, k)?;
    let l = p.alphabet();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::new();
    let mut factors: Vec<WeightScalar> = Vec::new();

    // Depth-first walk over (level, row); `use_f1` marks the entry row of a
    // level reached by a horizontal step.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        p: &Tableau,
        k: usize,
        l: usize,
        mode: &WeightMode,
        variant: KernelVariant,
        level: usize,
        j: usize,
        use_f1: bool,
        rows: &mut Vec<usize>,
        factors: &mut Vec<WeightScalar>,
        out: &mut Vec<WeightedOutcome>,
    ) -> Result<()> {
        let f = f_weight(p, level, j, use_f1, mode, variant)?;
        if !f.is_zero() {
            rows.push(j);
            factors.push(f.clone());
            if level == l {
                // a mutated kernel can trace an invalid growth; skip it
                // (the lost mass is what the negative controls detect)
                let tableau = p.try_apply_growth(k, rows);
                debug_assert!(
                    tableau.is_some() || variant != KernelVariant::Standard,
                    "standard kernel produced an invalid growth"
                );
                if let Some(tableau) = tableau {
                    let path = InsertionPath {
                        start: k,
                        rows: rows.clone(),
                        edge_factors: factors.clone(),
                    };
                    let weight = path.weight(mode);
                    out.push(WeightedOutcome {
                        tableau,
                        weight,
                        path,
                    });
                }
            } else {
                walk(
                    p, k, l, mode, variant, level + 1, j, true, rows, factors, out,
                )?;
            }
            rows.pop();
            factors.pop();
        }
        if j > 1 {
            let down = down_weight(&f, mode, variant);
            if !down.is_zero() {
                factors.push(down);
                walk(
                    p, k, l, mode, variant, level, j - 1, false, rows, factors, out,
                )?;
                factors.pop();
            }
        }
        Ok(())
    }

    walk(
        p,
        k,
        l,
        mode,
        variant,
        k,
        k,
        false,
        &mut rows,
        &mut factors,
        &mut out,
    )?;
    Ok(out)
}

/// Samples one q-insertion outcome with its exact path probability, walking
/// the same weight predicate as the enumeration.
///
/// Requires float mode with `0 <= q < 1`.
pub fn q_insert_sample(
    p: &Tableau,
    k: usize,
    mode: &WeightMode,
    rng: &mut RunRng,
) -> Result<(Tableau, InsertionPath)> {
    mode.sampling_q()?;
    check_letter(p, k)?;
    let l = p.alphabet();
    let mut rows = Vec::with_capacity(l - k + 1);
    let mut factors = Vec::new();
    let mut entry = k;
    for level in k..=l {
        let mut j = entry;
        let mut at_entry = level != k;
        loop {
            let f = f_weight(p, level, j, at_entry, mode, KernelVariant::Standard)?;
            let prob = f.to_f64().expect("float mode");
            if rng.next_f64() < prob {
                factors.push(f);
                break;
            }
            factors.push(down_weight(&f, mode, KernelVariant::Standard));
            j -= 1;
            at_entry = false;
        }
        rows.push(j);
        entry = j;
    }
    let tableau = p
        .try_apply_growth(k, &rows)
        .expect("insertion path gives a valid growth");
    Ok((
        tableau,
        InsertionPath {
            start: k,
            rows,
            edge_factors: factors,
        },
    ))
}

/// A sparse weighted distribution over shape-matched tableau pairs, keyed by
/// the canonical chain encodings.
#[derive(Debug, Clone)]
pub struct PairDistribution {
    mode: WeightMode,
    map: BTreeMap<(Tableau, StandardTableau), WeightScalar>,
}

impl PairDistribution {
    pub fn mode(&self) -> &WeightMode {
        &self.mode
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Tableau, StandardTableau), &WeightScalar)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, p: &Tableau, q: &StandardTableau) -> WeightScalar {
        self.map
            .get(&(p.clone(), q.clone()))
            .cloned()
            .unwrap_or_else(|| self.mode.zero())
    }

    pub fn total_mass(&self) -> WeightScalar {
        self.map
            .values()
            .fold(self.mode.zero(), |acc, w| &acc + w)
    }
}

/// The weight distribution `phi_w` over pairs `(P, Q)` after q-inserting the
/// whole word, built by the one-letter recursion. The recording tableau gains
/// box `n+1` at the unique cell where the shape grew.
pub fn phi_distribution(word: &[usize], l: usize, mode: &WeightMode) -> Result<PairDistribution> {
    phi_distribution_variant(word, l, mode, KernelVariant::Standard)
}

/// [`phi_distribution`] with a kernel mutation for negative controls.
pub fn phi_distribution_variant(
    word: &[usize],
    l: usize,
    mode: &WeightMode,
    variant: KernelVariant,
) -> Result<PairDistribution> {
    let l = l.max(1);
    let mut map = BTreeMap::new();
    map.insert(
        (Tableau::empty(l), StandardTableau::empty()),
        mode.one(),
    );
    for &k in word {
        let mut next: BTreeMap<(Tableau, StandardTableau), WeightScalar> = BTreeMap::new();
        for ((p, q), w) in &map {
            for outcome in q_insert_outcomes_variant(p, k, mode, variant)? {
                let q_ext = q.extend(outcome.path.final_row())?;
                let contribution = w.try_mul(&outcome.weight)?;
                next.entry((outcome.tableau, q_ext))
                    .and_modify(|acc| *acc = &*acc + &contribution)
                    .or_insert(contribution);
            }
        }
        map = next;
    }
    map.retain(|_, w| !w.is_zero());
    Ok(PairDistribution {
        mode: mode.clone(),
        map,
    })
}

/// Runs the tableau-valued Markov chain: at each step a letter `k` is drawn
/// with probability `a_k` and q-inserted. Returns the `steps + 1` tableaux
/// including the empty start.
pub fn run_tableau_chain(
    l: usize,
    a: &[f64],
    mode: &WeightMode,
    steps: usize,
    rng: &mut RunRng,
) -> Result<Vec<Tableau>> {
    mode.sampling_q()?;
    if a.len() != l || a.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::InvalidProbabilityVector(format!(
            "need {l} letter probabilities in [0, 1]"
        )));
    }
    let total: f64 = a.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbabilityVector(format!(
            "letter probabilities sum to {total}"
        )));
    }
    let mut chain = Vec::with_capacity(steps + 1);
    let mut p = Tableau::empty(l);
    chain.push(p.clone());
    for _ in 0..steps {
        let k = rng.categorical(a) + 1;
        let (next, _) = q_insert_sample(&p, k, mode, rng)?;
        p = next;
        chain.push(p.clone());
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{QPolynomial, QRationalFunction};
    use crate::shapes::{enumerate_partitions, Partition};
    use crate::tableaux::enumerate_tableaux;

    fn sym() -> WeightMode {
        WeightMode::Symbolic
    }

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64_coeffs(c)
    }

    fn sym_scalar(c: &[i64]) -> WeightScalar {
        sym().from_poly(&poly(c))
    }

    #[test]
    fn classic_insert_worked_example() {
        let p = Tableau::from_rows(&[vec![1, 1, 2, 3], vec![2, 3, 3], vec![3]], 3).unwrap();
        let (out, path) = column_insert(&p, 2).unwrap();
        assert_eq!(
            out.to_rows(),
            vec![vec![1, 1, 2, 3, 3], vec![2, 2, 3], vec![3]]
        );
        assert_eq!(path.rows, vec![2, 1]);
    }

    #[test]
    fn classic_insert_into_empty() {
        for l in 1..=4 {
            for k in 1..=l {
                let (out, _) = column_insert(&Tableau::empty(l), k).unwrap();
                assert_eq!(out, Tableau::single(l, k).unwrap());
            }
        }
    }

    #[test]
    fn rs_worked_word() {
        let word = [1, 1, 4, 3, 2, 3, 2];
        let (p, q) = rs_correspondence(&word, 4).unwrap();
        assert_eq!(p.to_rows(), vec![vec![1, 1, 3, 4], vec![2, 2], vec![3]]);
        assert_eq!(q.to_rows(), vec![vec![1, 2, 5, 7], vec![3, 4], vec![6]]);
    }

    #[test]
    fn rs_empty_word() {
        let (p, q) = rs_correspondence(&[], 2).unwrap();
        assert!(p.is_empty());
        assert_eq!(q.n(), 0);
    }

    #[test]
    fn rs_injective_on_small_words() {
        let mut seen = std::collections::BTreeSet::new();
        for w1 in 1..=2 {
            for w2 in 1..=2 {
                for w3 in 1..=2 {
                    let pair = rs_correspondence(&[w1, w2, w3], 2).unwrap();
                    assert!(seen.insert(pair), "collision at {w1}{w2}{w3}");
                }
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn local_weight_examples() {
        // f(i, 1) = 1 for both kinds
        let p = Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2]], 2).unwrap();
        for kind in [FKind::F0, FKind::F1] {
            assert!(local_weight(&p, 2, 1, kind, &sym()).unwrap().is_one());
        }
        // f0(2,2) on the two-row example: 1 - q^{lambda^1_1 - lambda^2_2} = 1 - q
        let w = local_weight(&p, 2, 2, FKind::F0, &sym()).unwrap();
        assert_eq!(w, sym_scalar(&[1, -1]));
    }

    #[test]
    fn example_one_weights() {
        // Inserting 2 into [[1,1,2,2],[2]] with l = 2: row 2 with weight
        // 1 - q, row 1 with weight q.
        let p = Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2]], 2).unwrap();
        let outcomes = q_insert_outcomes(&p, 2, &sym()).unwrap();
        assert_eq!(outcomes.len(), 2);
        let push_row2 = Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2, 2]], 2).unwrap();
        let push_row1 = Tableau::from_rows(&[vec![1, 1, 2, 2, 2], vec![2]], 2).unwrap();
        assert_eq!(outcomes[0].tableau, push_row2);
        assert_eq!(outcomes[0].weight, sym_scalar(&[1, -1]));
        assert_eq!(outcomes[1].tableau, push_row1);
        assert_eq!(outcomes[1].weight, sym_scalar(&[0, 1]));

        // Inserting 1 has a single outcome of weight one.
        let ones = q_insert_outcomes(&p, 1, &sym()).unwrap();
        assert_eq!(ones.len(), 1);
        assert!(ones[0].weight.is_one());
        assert_eq!(
            ones[0].tableau.to_rows(),
            vec![vec![1, 1, 1, 2, 2], vec![2]]
        );
    }

    #[test]
    fn figure_four_weights() {
        let p = Tableau::from_rows(
            &[vec![1, 2, 2, 2, 3, 5], vec![2, 3, 4, 5], vec![3, 4], vec![5]],
            5,
        )
        .unwrap();
        let outcomes = q_insert_outcomes(&p, 3, &sym()).unwrap();
        assert_eq!(outcomes.len(), 4);

        let rf = |num: QPolynomial, den: QPolynomial| {
            WeightScalar::Symbolic(QRationalFunction::new(num, den).unwrap())
        };
        let m1 = poly(&[1, 0, -1]); // 1 - q^2
        let m3 = poly(&[1, 0, 0, -1]); // 1 - q^3
        let m = poly(&[1, -1]); // 1 - q

        // (1 - q^2) * (1 - q^2)/(1 - q^3) * (1 - q)/(1 - q^2)
        let w1 = rf(&(&m1 * &m1) * &m, &m3 * &m1);
        // (1 - q^2) * (1 - q^2)/(1 - q^3) * (1 - (1 - q)/(1 - q^2))
        let inner = &sym().one() - &rf(m.clone(), m1.clone());
        let w2 = &rf(&m1 * &m1, m3.clone()) * &inner;
        // (1 - q^2) * (1 - (1 - q^2)/(1 - q^3))
        let w3 = &sym().from_poly(&m1) * &(&sym().one() - &rf(m1.clone(), m3.clone()));
        // q^2
        let w4 = sym_scalar(&[0, 0, 1]);

        assert_eq!(outcomes[0].weight, w1);
        assert_eq!(outcomes[1].weight, w2);
        assert_eq!(outcomes[2].weight, w3);
        assert_eq!(outcomes[3].weight, w4);

        let total = outcomes
            .iter()
            .fold(sym().zero(), |acc, o| &acc + &o.weight);
        assert!(total.is_one());

        // resulting row forms match the four printed tableaux
        assert_eq!(
            outcomes[0].tableau.to_rows(),
            vec![vec![1, 2, 2, 2, 3, 5], vec![2, 3, 3, 4, 5], vec![3, 4], vec![5]]
        );
        assert_eq!(
            outcomes[1].tableau.to_rows(),
            vec![
                vec![1, 2, 2, 2, 3, 5, 5],
                vec![2, 3, 3, 4],
                vec![3, 4],
                vec![5]
            ]
        );
        assert_eq!(
            outcomes[2].tableau.to_rows(),
            vec![
                vec![1, 2, 2, 2, 3, 4, 5],
                vec![2, 3, 3, 5],
                vec![3, 4],
                vec![5]
            ]
        );
        assert_eq!(
            outcomes[3].tableau.to_rows(),
            vec![
                vec![1, 2, 2, 2, 3, 3, 5],
                vec![2, 3, 4, 5],
                vec![3, 4],
                vec![5]
            ]
        );
    }

    #[test]
    fn stochastic_and_degenerate_small_sweep() {
        let zero_mode = WeightMode::exact_at(num_rational::BigRational::from_integer(0.into()))
            .unwrap();
        for n in 0..=4u64 {
            for shape in enumerate_partitions(n, 3) {
                for p in enumerate_tableaux(&shape, 3) {
                    for k in 1..=3 {
                        let outcomes = q_insert_outcomes(&p, k, &sym()).unwrap();
                        let total = outcomes
                            .iter()
                            .fold(sym().zero(), |acc, o| &acc + &o.weight);
                        assert!(total.is_one(), "mass for {p}, k={k}");

                        // highest path: the classic path dominates componentwise
                        let (classic, classic_path) = column_insert(&p, k).unwrap();
                        assert_eq!(outcomes[0].tableau, classic);
                        for o in &outcomes {
                            for (a, b) in classic_path.rows.iter().zip(&o.path.rows) {
                                assert!(a >= b);
                            }
                            // bookkeeping: type and shape move as expected
                            let mut ty = p.type_vector();
                            ty[k - 1] += 1;
                            assert_eq!(o.tableau.type_vector(), ty);
                            let j = o.path.final_row();
                            assert!(j <= k);
                            assert_eq!(
                                o.tableau.shape(),
                                &p.shape().add_box(j).unwrap()
                            );
                        }

                        // q = 0 support is exactly the classic outcome
                        let zero_outcomes = q_insert_outcomes(&p, k, &zero_mode).unwrap();
                        let live: Vec<_> = zero_outcomes
                            .iter()
                            .filter(|o| !o.weight.is_zero())
                            .collect();
                        assert_eq!(live.len(), 1);
                        assert_eq!(live[0].tableau, classic);
                        assert!(live[0].weight.is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn damped_down_variant_breaks_mass() {
        let p = Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2]], 2).unwrap();
        let outcomes =
            q_insert_outcomes_variant(&p, 2, &sym(), KernelVariant::DampedDown).unwrap();
        let total = outcomes
            .iter()
            .fold(sym().zero(), |acc, o| &acc + &o.weight);
        assert!(!total.is_one());
    }

    #[test]
    fn phi_single_letter_and_mass() {
        let dist = phi_distribution(&[2], 3, &sym()).unwrap();
        assert_eq!(dist.len(), 1);
        let ((p, q), w) = dist.iter().next().unwrap();
        assert_eq!(p, &Tableau::single(3, 2).unwrap());
        assert_eq!(q, &StandardTableau::single());
        assert!(w.is_one());
    }

    #[test]
    fn phi_word_12_example() {
        let dist = phi_distribution(&[1, 2], 2, &sym()).unwrap();
        // support: the column pair with mass 1 - q and the row pair with mass q
        let col_p = Tableau::from_rows(&[vec![1], vec![2]], 2).unwrap();
        let col_q = StandardTableau::from_rows(&[vec![1], vec![2]]).unwrap();
        let row_p = Tableau::from_rows(&[vec![1, 2]], 2).unwrap();
        let row_q = StandardTableau::from_rows(&[vec![1, 2]]).unwrap();
        assert_eq!(dist.get(&col_p, &col_q), sym_scalar(&[1, -1]));
        assert_eq!(dist.get(&row_p, &row_q), sym_scalar(&[0, 1]));
        assert!(dist.total_mass().is_one());
    }

    #[test]
    fn phi_mass_one_sweep() {
        for l in 2..=3usize {
            for n in 1..=4usize {
                let mut word = vec![1usize; n];
                loop {
                    let dist = phi_distribution(&word, l, &sym()).unwrap();
                    assert!(dist.total_mass().is_one(), "mass for word {word:?}");
                    for ((p, q), _) in dist.iter() {
                        assert_eq!(p.shape(), &q.shape());
                    }
                    // next word over [l]^n
                    let mut i = 0;
                    loop {
                        if i == n {
                            break;
                        }
                        if word[i] < l {
                            word[i] += 1;
                            break;
                        }
                        word[i] = 1;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn phi_at_zero_is_classic_point_mass() {
        let zero = WeightMode::exact_at(num_rational::BigRational::from_integer(0.into()))
            .unwrap();
        let word = [2, 1, 2, 2, 1];
        let dist = phi_distribution(&word, 2, &zero).unwrap();
        let live: Vec<_> = dist.iter().filter(|(_, w)| !w.is_zero()).collect();
        assert_eq!(live.len(), 1);
        let (pair, w) = live[0];
        assert!(w.is_one());
        let classic = rs_correspondence(&word, 2).unwrap();
        assert_eq!(pair, &classic);
    }

    #[test]
    fn sample_at_zero_matches_classic() {
        let mode = WeightMode::float_at(0.0).unwrap();
        let mut rng = RunRng::master(7);
        let p = Tableau::from_rows(&[vec![1, 1, 2, 3], vec![2, 3, 3], vec![3]], 3).unwrap();
        for k in 1..=3 {
            let (sampled, _) = q_insert_sample(&p, k, &mode, &mut rng).unwrap();
            let (classic, _) = column_insert(&p, k).unwrap();
            assert_eq!(sampled, classic);
        }
    }

    #[test]
    fn sample_frequencies_match_exact_weights() {
        // frequency check against the exact distribution at q = 1/2, on the
        // two-letter example and on tableaux reached by fixed words
        let mode = WeightMode::float_at(0.5).unwrap();
        let cases: Vec<(Tableau, usize)> = vec![
            (
                Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2]], 2).unwrap(),
                2,
            ),
            (rs_correspondence(&[2, 1, 3, 1], 3).unwrap().0, 3),
            (rs_correspondence(&[3, 2, 2, 1, 3], 3).unwrap().0, 2),
        ];
        for (case, (p, k)) in cases.into_iter().enumerate() {
            let outcomes = q_insert_outcomes(&p, k, &mode).unwrap();
            let runs = 40_000usize;
            let mut counts = vec![0usize; outcomes.len()];
            let mut rng = RunRng::master(42 + case as u64);
            for _ in 0..runs {
                let (t, _) = q_insert_sample(&p, k, &mode, &mut rng).unwrap();
                let idx = outcomes
                    .iter()
                    .position(|o| o.tableau == t)
                    .expect("sampled outcome in support");
                counts[idx] += 1;
            }
            for (o, &c) in outcomes.iter().zip(&counts) {
                let prob = o.weight.to_f64().unwrap();
                let sigma = (prob * (1.0 - prob) / runs as f64).sqrt();
                let emp = c as f64 / runs as f64;
                assert!(
                    (emp - prob).abs() <= 4.0 * sigma,
                    "case {case}: empirical {emp} vs exact {prob}"
                );
            }
        }
    }

    #[test]
    fn bump_guard_does_not_fire_on_reachable_sites() {
        // every enumeration over small tableaux must succeed: a vanishing f1
        // denominator would surface as BumpDenominatorVanished
        for n in 0..=5u64 {
            for shape in enumerate_partitions(n, 4) {
                for p in enumerate_tableaux(&shape, 4) {
                    for k in 1..=4 {
                        q_insert_outcomes(&p, k, &sym()).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn letter_out_of_range_rejected() {
        let p = Tableau::empty(2);
        assert!(matches!(
            q_insert_outcomes(&p, 3, &sym()),
            Err(Error::LetterOutOfRange { .. })
        ));
        assert!(matches!(
            column_insert(&p, 0),
            Err(Error::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn chain_l1_is_deterministic_row_growth() {
        let mode = WeightMode::float_at(0.5).unwrap();
        let mut rng = RunRng::master(1);
        let chain = run_tableau_chain(1, &[1.0], &mode, 5, &mut rng).unwrap();
        for (i, t) in chain.iter().enumerate() {
            assert_eq!(t.shape(), &Partition::new(vec![i as u64]).unwrap_or_else(|_| Partition::empty()));
        }
    }
}
