//! q-Whittaker functions, q-deformed tableau counts, and the kernel
//! operators `K`, `M` and their recursive two-level forms.
//!
//! `psi` is evaluated by the level-by-level branching recursion through
//! `kappa_hat`, memoized per context, so that large alphabets stay cheap;
//! direct enumeration over tableaux is kept as an independent route and the
//! two are tested against each other.

use crate::insertion::{q_insert_outcomes_variant, KernelVariant};
use crate::qarith::{
    BigInt, BigRational, QExp, QPolynomial, QRationalFunction, WeightMode, WeightScalar,
};
use crate::shapes::{
    delta, delta_scalar, interlaces, interlacings_below, l_coefficient, Partition,
};
use crate::tableaux::{enumerate_standard, enumerate_tableaux, kappa, kappa_scalar, Tableau};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

pub(crate) fn big_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Evaluation context: alphabet size, parameter tuple `a`, and weight mode.
///
/// The parameters are exact rationals; float contexts convert on use. The
/// `psi` memo table is per-context and guarded, so a context can be shared
/// across verification threads.
pub struct WhittakerContext {
    l: usize,
    a: Vec<BigRational>,
    mode: WeightMode,
    psi_memo: Mutex<HashMap<(usize, Partition), WeightScalar>>,
}

impl WhittakerContext {
    pub fn new(l: usize, a: Vec<BigRational>, mode: WeightMode) -> Result<Self> {
        if l == 0 || a.len() != l {
            return Err(Error::Usage(format!(
                "need {l} parameters, got {}",
                a.len()
            )));
        }
        Ok(WhittakerContext {
            l,
            a,
            mode,
            psi_memo: Mutex::new(HashMap::new()),
        })
    }

    /// A context with probability semantics: `a_i >= 0`, `sum a_i = 1`, and a
    /// q-point inside `(-1, 1)` (float mode: `[0, 1)`).
    pub fn probability(l: usize, a: Vec<BigRational>, mode: WeightMode) -> Result<Self> {
        if a.iter().any(|x| x.is_negative()) {
            return Err(Error::InvalidProbabilityVector(
                "negative letter probability".into(),
            ));
        }
        let total: BigRational = a.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidProbabilityVector(format!(
                "letter probabilities sum to {total}"
            )));
        }
        match &mode {
            WeightMode::ExactAtQ(q) => {
                if q.abs() >= BigRational::one() {
                    return Err(Error::InvalidQPoint(format!(
                        "probability context needs |q| < 1, got {q}"
                    )));
                }
            }
            WeightMode::FloatAtQ(q) => {
                if !(0.0..1.0).contains(q) {
                    return Err(Error::InvalidQPoint(format!(
                        "probability context needs 0 <= q < 1, got {q}"
                    )));
                }
            }
            WeightMode::Symbolic => {}
        }
        WhittakerContext::new(l, a, mode)
    }

    pub fn alphabet(&self) -> usize {
        self.l
    }

    pub fn params(&self) -> &[BigRational] {
        &self.a
    }

    pub fn params_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.a
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn mode(&self) -> &WeightMode {
        &self.mode
    }

    /// `a_i` as a scalar, 1-based.
    pub fn a_scalar(&self, i: usize) -> WeightScalar {
        self.mode.from_rational(&self.a[i - 1])
    }

    /// `a^mu` for a composition (type vector).
    pub fn a_pow(&self, ty: &[u64]) -> WeightScalar {
        let mut acc = self.mode.one();
        for (i, &t) in ty.iter().enumerate() {
            if t > 0 {
                acc = &acc * &self.mode.from_rational(&self.a[i]).pow(t);
            }
        }
        acc
    }

    /// Sum of the parameters.
    pub fn a_total(&self) -> WeightScalar {
        let total: BigRational = self.a.iter().sum();
        self.mode.from_rational(&total)
    }

    /// The q-Whittaker function by the branching recursion
    /// `Psi^(j)(lambda) = sum over mu ≺ lambda of a_j^{|lambda|-|mu|}
    /// kappa_hat(lambda, mu) Psi^(j-1)(mu)`, memoized per `(level, shape)`.
    pub fn psi(&self, lambda: &Partition) -> Result<WeightScalar> {
        self.psi_level(self.l, lambda)
    }

    fn psi_level(&self, level: usize, lambda: &Partition) -> Result<WeightScalar> {
        if lambda.len() > level {
            return Err(Error::TooManyParts {
                parts: lambda.len(),
                limit: level,
            });
        }
        if let Some(hit) = self.psi_memo.lock().unwrap().get(&(level, lambda.clone())) {
            return Ok(hit.clone());
        }
        let value = if level == 1 {
            self.mode.from_rational(&self.a[0]).pow(lambda.size())
        } else {
            let mut acc = self.mode.zero();
            for mu in interlacings_below(lambda, level - 1) {
                let hop = self
                    .mode
                    .from_rational(&self.a[level - 1])
                    .pow(lambda.size() - mu.size());
                let kh = kappa_hat_scalar(lambda, &mu, level, &self.mode)?;
                let sub = self.psi_level(level - 1, &mu)?;
                acc = &acc + &(&(&hop * &kh) * &sub);
            }
            acc
        };
        self.psi_memo
            .lock()
            .unwrap()
            .insert((level, lambda.clone()), value.clone());
        Ok(value)
    }

    /// The q-Whittaker function by direct enumeration of the defining tableau
    /// sum; the independent route used to test [`WhittakerContext::psi`].
    pub fn psi_by_enumeration(&self, lambda: &Partition) -> Result<WeightScalar> {
        if lambda.len() > self.l {
            return Err(Error::TooManyParts {
                parts: lambda.len(),
                limit: self.l,
            });
        }
        let mut acc = self.mode.zero();
        for p in enumerate_tableaux(lambda, self.l) {
            let term = &self.a_pow(&p.type_vector()) * &kappa_scalar(&p, &self.mode);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Kernel entry `K(lambda, P) = a^P kappa(P) [sh P = lambda]`.
    pub fn k_entry(&self, lambda: &Partition, p: &Tableau) -> WeightScalar {
        if p.shape() != lambda || p.alphabet() != self.l {
            return self.mode.zero();
        }
        &self.a_pow(&p.type_vector()) * &kappa_scalar(p, &self.mode)
    }

    /// Kernel entry `M(P, P~) = sum_k a_k I_k(P, P~)`.
    pub fn m_entry(&self, p: &Tableau, target: &Tableau) -> Result<WeightScalar> {
        Ok(self
            .m_row(p, KernelVariant::Standard)?
            .remove(target)
            .unwrap_or_else(|| self.mode.zero()))
    }

    /// The whole row `M(P, ·)` as a sparse map.
    pub fn m_row(
        &self,
        p: &Tableau,
        variant: KernelVariant,
    ) -> Result<BTreeMap<Tableau, WeightScalar>> {
        let mut row: BTreeMap<Tableau, WeightScalar> = BTreeMap::new();
        for k in 1..=self.l {
            let ak = self.a_scalar(k);
            if ak.is_zero() {
                continue;
            }
            for outcome in q_insert_outcomes_variant(p, k, &self.mode, variant)? {
                let w = &ak * &outcome.weight;
                row.entry(outcome.tableau)
                    .and_modify(|acc| *acc = &*acc + &w)
                    .or_insert(w);
            }
        }
        Ok(row)
    }

    /// Two-level kernel entry `K-hat(lambda^l, lambda^{l-1}) =
    /// a_l^{|lambda^l| - |lambda^{l-1}|} kappa_hat`.
    pub fn hat_k_entry(&self, top: &Partition, below: &Partition) -> Result<WeightScalar> {
        let kh = kappa_hat_scalar(top, below, self.l, &self.mode)?;
        let hop = self
            .mode
            .from_rational(&self.a[self.l - 1])
            .pow(top.size() - below.size());
        Ok(&hop * &kh)
    }

    /// Two-level kernel entry `M-hat` on interlacing pairs; zero when the
    /// move is not one of the three supported cases.
    pub fn hat_m_entry(
        &self,
        src: (&Partition, &Partition),
        dst: (&Partition, &Partition),
        variant: KernelVariant,
    ) -> Result<WeightScalar> {
        hat_m_entry(src, dst, self.l, &self.a, &self.mode, variant)
    }

    /// Shape-chain transition probability
    /// `p(mu, lambda) = Psi(lambda)/Psi(mu) L(mu, lambda)` for `mu ↗ lambda`.
    pub fn transition_p(&self, mu: &Partition, lambda: &Partition) -> Result<WeightScalar> {
        let row = match Partition::growth_row(mu, lambda) {
            Some(row) if lambda.len() <= self.l => row,
            _ => return Ok(self.mode.zero()),
        };
        let c = self.mode.from_poly(&l_coefficient(mu, row, self.l));
        let ratio = self.psi(lambda)?.try_div(&self.psi(mu)?)?;
        Ok(&ratio * &c)
    }

    /// The shape law after `|lambda|` insertions:
    /// `nu(lambda) = (lambda_l)_q^{-1} Psi(lambda) f^lambda(q)`.
    pub fn nu(&self, lambda: &Partition) -> Result<WeightScalar> {
        self.nu_with(lambda, &mut FLambdaTable::new())
    }

    /// [`WhittakerContext::nu`] reusing a shared `f^lambda` table.
    pub fn nu_with(&self, lambda: &Partition, table: &mut FLambdaTable) -> Result<WeightScalar> {
        let poch = self.mode.poch(lambda.part(self.l));
        let f = self.mode.from_poly(&table.get(lambda));
        self.psi(lambda)?.try_mul(&f)?.try_div(&poch)
    }

    /// Conditional law of the tableau given its shape: `K(lambda, P)/Psi(lambda)`.
    pub fn conditional_tableau(&self, lambda: &Partition, p: &Tableau) -> Result<WeightScalar> {
        self.k_entry(lambda, p).try_div(&self.psi(lambda)?)
    }

    /// Conditional law of the type given the shape:
    /// `a^mu k_{lambda mu}(q) / (Delta_l(lambda) Psi(lambda))`.
    pub fn conditional_type(&self, lambda: &Partition, mu: &[u64]) -> Result<WeightScalar> {
        let k = k_lambda_mu(lambda, mu, self.l)?;
        let num = &self.a_pow(mu) * &self.mode.from_poly(&k);
        let den = &delta_scalar(lambda, self.l, &self.mode)? * &self.psi(lambda)?;
        num.try_div(&den)
    }
}

/// The two-level weight `kappa_hat(lambda^l, lambda^{l-1})`, the ratio of
/// q-Pochhammer products that makes `kappa` factor level by level.
pub fn kappa_hat(top: &Partition, below: &Partition, l: usize) -> Result<QRationalFunction> {
    check_hat_pair(top, below, l)?;
    let mut num = QPolynomial::one();
    for i in 1..=l.saturating_sub(2) {
        num = &num * &crate::qarith::qpochhammer(below.part(i) - below.part(i + 1));
    }
    let mut den = QPolynomial::one();
    for i in 1..l {
        den = &den * &crate::qarith::qpochhammer(below.part(i) - top.part(i + 1));
        den = &den * &crate::qarith::qpochhammer(top.part(i) - below.part(i));
    }
    QRationalFunction::new(num, den)
}

/// [`kappa_hat`] evaluated in a weight mode.
pub fn kappa_hat_scalar(
    top: &Partition,
    below: &Partition,
    l: usize,
    mode: &WeightMode,
) -> Result<WeightScalar> {
    check_hat_pair(top, below, l)?;
    let mut num = mode.one();
    for i in 1..=l.saturating_sub(2) {
        num = &num * &mode.poch(below.part(i) - below.part(i + 1));
    }
    let mut den = mode.one();
    for i in 1..l {
        den = &den * &mode.poch(below.part(i) - top.part(i + 1));
        den = &den * &mode.poch(top.part(i) - below.part(i));
    }
    num.try_div(&den)
}

fn check_hat_pair(top: &Partition, below: &Partition, l: usize) -> Result<()> {
    if top.len() > l || below.len() > l.saturating_sub(1) {
        return Err(Error::TooManyParts {
            parts: top.len().max(below.len() + 1),
            limit: l,
        });
    }
    if !interlaces(below, top) {
        return Err(Error::InterlacingViolation);
    }
    Ok(())
}

/// Entry of a partition viewed as pattern level `level`: rows outside
/// `1..=level` are undefined (q-powers referencing them vanish).
fn level_entry(p: &Partition, level: usize, j: usize) -> Option<u64> {
    if j == 0 || j > level {
        None
    } else {
        Some(p.part(j))
    }
}

fn hat_m_entry(
    src: (&Partition, &Partition),
    dst: (&Partition, &Partition),
    l: usize,
    a: &[BigRational],
    mode: &WeightMode,
    variant: KernelVariant,
) -> Result<WeightScalar> {
    let (top, below) = src;
    let (new_top, new_below) = dst;
    check_hat_pair(top, below, l)?;
    if check_hat_pair(new_top, new_below, l).is_err() {
        return Ok(mode.zero());
    }
    let Some(k) = Partition::growth_row(top, new_top) else {
        return Ok(mode.zero());
    };
    // entry helpers for the two pattern levels
    let lo = |j: usize| level_entry(below, l - 1, j);
    let hi = |j: usize| level_entry(top, l, j);

    if new_below == below {
        // the top level moves alone (the inserted letter is l)
        let mut w =
            &mode.from_rational(&a[l - 1]) * &mode.one_minus_q_pow(QExp::gap(lo(k - 1), hi(k)));
        for i in k..l {
            w = &w * &mode.q_pow(QExp::gap(lo(i), hi(i + 1)));
        }
        return Ok(w);
    }
    let Some(m) = Partition::growth_row(below, new_below) else {
        return Ok(mode.zero());
    };
    if m == k && k < l {
        // simultaneous move in the same row
        let lead = mode.one_minus_q_pow(QExp::gap(lo(k), lo(k + 1)).succ());
        let num = mode.one_minus_q_pow(QExp::gap(lo(k - 1), hi(k)));
        let prod = &lead * &num;
        if variant == KernelVariant::F1AsF0 {
            return Ok(prod);
        }
        let den_gap = QExp::gap(lo(k - 1), lo(k));
        if den_gap.is_zero() {
            return Err(Error::BumpDenominatorVanished { level: l, row: k });
        }
        return prod.try_div(&mode.one_minus_q_pow(den_gap));
    }
    if k < m && m < l {
        // top level moves in row k while the lower level moves in row m > k
        let lead = mode.one_minus_q_pow(QExp::gap(lo(m), lo(m + 1)).succ());
        let mut w = &lead * &mode.one_minus_q_pow(QExp::gap(lo(k - 1), hi(k)));
        for i in k + 1..=m {
            w = &w * &mode.q_pow(QExp::gap(lo(i - 1), hi(i)));
        }
        if variant != KernelVariant::F1AsF0 {
            let ratio_num = mode.one_minus_q_pow(QExp::gap(hi(m), lo(m)));
            let den_gap = QExp::gap(lo(m - 1), lo(m));
            if den_gap.is_zero() {
                return Err(Error::BumpDenominatorVanished { level: l, row: m });
            }
            w = &w * &ratio_num.try_div(&mode.one_minus_q_pow(den_gap))?;
        }
        return Ok(w);
    }
    Ok(mode.zero())
}

/// Memoized dynamic program for `f^lambda(q)`, the q-deformed count of
/// standard tableaux: one factor `1 - q^{lambda_r - lambda_{r+1}}` per box
/// added in row `r`, summed over all growth orders. Valid because the step
/// factor depends only on the post-step shape.
pub struct FLambdaTable {
    memo: HashMap<Partition, QPolynomial>,
    mutated: bool,
}

impl FLambdaTable {
    pub fn new() -> Self {
        FLambdaTable {
            memo: HashMap::new(),
            mutated: false,
        }
    }

    /// A deliberately wrong table (step exponents shifted by one) used as a
    /// negative control.
    pub fn mutated() -> Self {
        FLambdaTable {
            memo: HashMap::new(),
            mutated: true,
        }
    }

    pub fn get(&mut self, lambda: &Partition) -> QPolynomial {
        if let Some(hit) = self.memo.get(lambda) {
            return hit.clone();
        }
        let value = if lambda.is_empty() {
            QPolynomial::one()
        } else {
            let mut acc = QPolynomial::zero();
            for r in lambda.removable_rows() {
                let prev = lambda.remove_box(r).expect("removable");
                let gap = lambda.part(r) - lambda.part(r + 1);
                let exp = if self.mutated { gap + 1 } else { gap };
                let factor = QPolynomial::one_minus_q_power(exp);
                acc = &acc + &(&self.get(&prev) * &factor);
            }
            acc
        };
        self.memo.insert(lambda.clone(), value.clone());
        value
    }
}

impl Default for FLambdaTable {
    fn default() -> Self {
        FLambdaTable::new()
    }
}

/// `f^lambda(q)` by the Young-lattice dynamic program.
pub fn f_lambda_q(lambda: &Partition) -> QPolynomial {
    FLambdaTable::new().get(lambda)
}

/// `f^lambda(q)` by direct enumeration of standard tableaux; the independent
/// route used to test the dynamic program.
pub fn f_lambda_by_enumeration(lambda: &Partition) -> QPolynomial {
    let mut acc = QPolynomial::zero();
    for q in enumerate_standard(lambda) {
        acc = &acc + &crate::tableaux::rho(&q);
    }
    acc
}

/// The q-deformed Kostka polynomial
/// `k_{lambda mu}(q) = Delta_l(lambda) sum over tableaux of shape lambda and
/// type mu of kappa(P)`; the reduction always clears the denominator.
pub fn k_lambda_mu(lambda: &Partition, mu: &[u64], l: usize) -> Result<QPolynomial> {
    if lambda.len() > l {
        return Err(Error::TooManyParts {
            parts: lambda.len(),
            limit: l,
        });
    }
    if mu.iter().sum::<u64>() != lambda.size() {
        return Err(Error::SizeMismatch);
    }
    let mut acc = QRationalFunction::zero();
    for p in enumerate_tableaux(lambda, l) {
        let ty = p.type_vector();
        let matches = (0..l.max(mu.len()))
            .all(|i| ty.get(i).copied().unwrap_or(0) == mu.get(i).copied().unwrap_or(0));
        if matches {
            acc = &acc + &kappa(&p);
        }
    }
    let total = &acc * &QRationalFunction::from_poly(delta(lambda, l)?);
    total.to_polynomial()
}

/// Report of the large-alphabet limit check for `psi`.
#[derive(Debug, Clone)]
pub struct PsiLimitReport {
    pub lambda: Partition,
    pub q: BigRational,
    pub limit: BigRational,
    /// `(l, |Psi_{(1/l)^l}(lambda) - limit|)` per requested alphabet size.
    pub errors: Vec<(usize, BigRational)>,
    pub strictly_decreasing: bool,
}

/// Computes `Psi_{(1/l)^l}(lambda)` exactly for each requested `l` and the
/// limiting value `f^lambda(q) / (n! (1-q)^n Delta(lambda))`, reporting the
/// exact errors and whether they strictly decrease along the list.
pub fn psi_limit_check(
    lambda: &Partition,
    q: &BigRational,
    ls: &[usize],
    inflate_kernel: bool,
) -> Result<PsiLimitReport> {
    let n = lambda.size();
    let f = f_lambda_q(lambda).eval_rational(q);
    let one_minus_q = BigRational::one() - q;
    let denom = BigRational::from_integer(big_factorial(n))
        * pow_rational(&one_minus_q, n)
        * crate::shapes::delta_full(lambda).eval_rational(q);
    let limit = f / denom;

    let mut errors = Vec::with_capacity(ls.len());
    for &l in ls {
        let value = psi_uniform_exact(lambda, q, l, inflate_kernel)?;
        let err = (value - &limit).abs();
        errors.push((l, err));
    }
    let strictly_decreasing = errors.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(PsiLimitReport {
        lambda: lambda.clone(),
        q: q.clone(),
        limit,
        errors,
        strictly_decreasing,
    })
}

fn pow_rational(base: &BigRational, exp: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `Psi_{(1/l)^l}(lambda)` as an exact rational, via the branching recursion
/// with all parameters equal to `1/l`. `inflate_kernel` adds one to every
/// `kappa_hat` weight (a negative control that destroys convergence).
fn psi_uniform_exact(
    lambda: &Partition,
    q: &BigRational,
    l: usize,
    inflate_kernel: bool,
) -> Result<BigRational> {
    if lambda.len() > l {
        return Err(Error::TooManyParts {
            parts: lambda.len(),
            limit: l,
        });
    }
    let mode = WeightMode::exact_at(q.clone())?;
    let a = BigRational::new(BigInt::one(), BigInt::from(l as u64));
    let mut memo: HashMap<(usize, Partition), BigRational> = HashMap::new();

    fn rec(
        level: usize,
        lambda: &Partition,
        a: &BigRational,
        mode: &WeightMode,
        inflate: bool,
        memo: &mut HashMap<(usize, Partition), BigRational>,
    ) -> Result<BigRational> {
        if let Some(hit) = memo.get(&(level, lambda.clone())) {
            return Ok(hit.clone());
        }
        let value = if level == 1 {
            pow_rational(a, lambda.size())
        } else {
            let mut acc = BigRational::zero();
            for mu in interlacings_below(lambda, level - 1) {
                let mut kh = kappa_hat_scalar(lambda, &mu, level, mode)?
                    .as_exact()
                    .expect("exact mode")
                    .clone();
                if inflate {
                    kh += BigRational::one();
                }
                let hop = pow_rational(a, lambda.size() - mu.size());
                acc += hop * kh * rec(level - 1, &mu, a, mode, inflate, memo)?;
            }
            acc
        };
        memo.insert((level, lambda.clone()), value.clone());
        Ok(value)
    }

    rec(l, lambda, &a, &mode, inflate_kernel, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::enumerate_partitions;
    use crate::tableaux::rho_scalar;

    fn pt(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn big_binomial(n: u64, k: u64) -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    }

    fn sym_ctx(l: usize, a: &[(i64, i64)]) -> WhittakerContext {
        let a = a.iter().map(|&(n, d)| rat(n, d)).collect();
        WhittakerContext::new(l, a, WeightMode::Symbolic).unwrap()
    }

    #[test]
    fn psi_single_row_closed_form() {
        let ctx = sym_ctx(1, &[(2, 3)]);
        for n in 0..5 {
            let psi = ctx.psi(&pt(&[n])).unwrap();
            let expect = ctx.mode().from_rational(&rat(2, 3)).pow(n);
            assert_eq!(psi, expect);
        }
    }

    #[test]
    fn psi_l2_single_box() {
        // Psi((1)) = (a1 + a2)/(1 - q)
        let ctx = sym_ctx(2, &[(1, 3), (1, 5)]);
        let psi = ctx.psi(&pt(&[1])).unwrap();
        let num = QRationalFunction::from_rational(&rat(8, 15));
        let den = QRationalFunction::from_poly(QPolynomial::from_i64_coeffs(&[1, -1]));
        assert_eq!(psi.as_symbolic().unwrap(), &(&num / &den));
    }

    #[test]
    fn psi_recursion_matches_enumeration() {
        let ctx = sym_ctx(3, &[(1, 2), (1, 4), (1, 4)]);
        for n in 0..=4 {
            for lambda in enumerate_partitions(n, 3) {
                let a = ctx.psi(&lambda).unwrap();
                let b = ctx.psi_by_enumeration(&lambda).unwrap();
                assert_eq!(a, b, "psi mismatch at {lambda}");
            }
        }
    }

    #[test]
    fn psi_exact_point_cross_check() {
        let mode = WeightMode::exact_at(rat(1, 2)).unwrap();
        let ctx = WhittakerContext::new(3, vec![rat(1, 2), rat(1, 4), rat(1, 4)], mode).unwrap();
        let lambda = pt(&[2, 1]);
        assert_eq!(
            ctx.psi(&lambda).unwrap(),
            ctx.psi_by_enumeration(&lambda).unwrap()
        );
    }

    #[test]
    fn kappa_hat_examples() {
        let one_minus_q = QPolynomial::from_i64_coeffs(&[1, -1]);
        let expect = QRationalFunction::new(QPolynomial::one(), one_minus_q).unwrap();
        assert_eq!(kappa_hat(&pt(&[1]), &Partition::empty(), 2).unwrap(), expect);
        assert_eq!(kappa_hat(&pt(&[1]), &pt(&[1]), 2).unwrap(), expect);
        assert!(kappa_hat(&pt(&[3]), &pt(&[1, 1]), 2).is_err());
    }

    #[test]
    fn kappa_factorizes_through_kappa_hat() {
        // kappa(P) = kappa_hat(top two levels) * kappa(P restricted below)
        for n in 0..=5u64 {
            for l in 2..=4usize {
                for shape in enumerate_partitions(n, l) {
                    for p in enumerate_tableaux(&shape, l) {
                        let below = Tableau::new(l - 1, p.chain()[..l - 1].to_vec()).unwrap();
                        let kh = kappa_hat(p.shape(), below.shape(), l).unwrap();
                        let lhs = kappa(&p);
                        let rhs = &kh * &kappa(&below);
                        assert_eq!(lhs, rhs, "factorization at {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn f_lambda_examples() {
        assert_eq!(f_lambda_q(&pt(&[1])), QPolynomial::from_i64_coeffs(&[1, -1]));
        // f^{(2,1)}(q) = (1-q)^3 (2+q)
        let expect = &QPolynomial::from_i64_coeffs(&[1, -1]).pow(3)
            * &QPolynomial::from_i64_coeffs(&[2, 1]);
        assert_eq!(f_lambda_q(&pt(&[2, 1])), expect);
    }

    #[test]
    fn f_lambda_dp_equals_enumeration() {
        for n in 0..=6u64 {
            for lambda in enumerate_partitions(n, n.max(1) as usize) {
                assert_eq!(
                    f_lambda_q(&lambda),
                    f_lambda_by_enumeration(&lambda),
                    "f^lambda mismatch at {lambda}"
                );
            }
        }
    }

    #[test]
    fn f_lambda_at_zero_counts_standard_tableaux() {
        for n in 0..=6u64 {
            for lambda in enumerate_partitions(n, n.max(1) as usize) {
                let count = enumerate_standard(&lambda).len() as i64;
                assert_eq!(
                    f_lambda_q(&lambda).coeff(0),
                    BigInt::from(count),
                    "SYT count at {lambda}"
                );
            }
        }
    }

    #[test]
    fn kostka_specialization_at_zero() {
        // k_{lambda mu}(0) = Kostka number
        let k = k_lambda_mu(&pt(&[2, 1]), &[1, 1, 1], 3).unwrap();
        assert_eq!(k.coeff(0), BigInt::from(2));
        let k = k_lambda_mu(&pt(&[3]), &[3, 0, 0], 3).unwrap();
        assert!(k.is_one());
        // size mismatch is an error
        assert!(k_lambda_mu(&pt(&[2]), &[1], 2).is_err());
    }

    #[test]
    fn kostka_symmetric_under_type_permutation() {
        // all permutations of each type vector give the same polynomial
        fn type_permutations(mu: &[u64; 3]) -> Vec<[u64; 3]> {
            let mut out = vec![];
            let idx = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            for p in idx {
                out.push([mu[p[0]], mu[p[1]], mu[p[2]]]);
            }
            out
        }
        for n in 1..=5u64 {
            for lambda in enumerate_partitions(n, 3) {
                for mu in enumerate_partitions(n, 3) {
                    let mut base = [0u64; 3];
                    for (i, &p) in mu.parts().iter().enumerate() {
                        base[i] = p;
                    }
                    let reference = k_lambda_mu(&lambda, &base, 3).unwrap();
                    for shuffled in type_permutations(&base) {
                        assert_eq!(
                            reference,
                            k_lambda_mu(&lambda, &shuffled, 3).unwrap(),
                            "asymmetry at lambda={lambda}, mu={shuffled:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn nu_matches_word_marginal() {
        // nu(lambda) equals the a-weighted mass that the word distributions
        // place on shape lambda, summed over all words
        use crate::insertion::phi_distribution;
        use crate::verify::{all_words, word_type};
        let mode = WeightMode::exact_at(rat(1, 2)).unwrap();
        let ctx = WhittakerContext::probability(2, vec![rat(1, 3), rat(2, 3)], mode).unwrap();
        for n in 0..=5usize {
            let mut marginal: HashMap<Partition, WeightScalar> = HashMap::new();
            for word in all_words(2, n) {
                let aw = ctx.a_pow(&word_type(&word, 2));
                for ((p, _), wt) in phi_distribution(&word, 2, ctx.mode()).unwrap().iter() {
                    let contribution = &aw * wt;
                    marginal
                        .entry(p.shape().clone())
                        .and_modify(|v| *v = &*v + &contribution)
                        .or_insert(contribution);
                }
            }
            for lambda in enumerate_partitions(n as u64, 2) {
                let direct = ctx.nu(&lambda).unwrap();
                let brute = marginal.remove(&lambda).unwrap_or_else(|| ctx.mode().zero());
                assert_eq!(direct, brute, "nu at {lambda}");
            }
        }
    }

    #[test]
    fn transition_at_q_zero_is_schur_ratio() {
        // at q = 0 the shape chain moves with Schur-polynomial ratios; for
        // two letters the Schur value has the closed form
        // s_{(p,r)}(x, y) = (xy)^r sum_{j=0..p-r} x^j y^{p-r-j}
        fn schur2(lambda: &Partition, x: &BigRational, y: &BigRational) -> BigRational {
            let (p, r) = (lambda.part(1), lambda.part(2));
            let mut base = BigRational::one();
            for _ in 0..r {
                base *= x * y;
            }
            let mut sum = BigRational::zero();
            for j in 0..=(p - r) {
                let mut term = BigRational::one();
                for _ in 0..j {
                    term *= x;
                }
                for _ in 0..(p - r - j) {
                    term *= y;
                }
                sum += term;
            }
            base * sum
        }
        let x = rat(1, 3);
        let y = rat(2, 3);
        let mode = WeightMode::exact_at(rat(0, 1)).unwrap();
        let ctx = WhittakerContext::probability(2, vec![x.clone(), y.clone()], mode).unwrap();
        for n in 0..=5 {
            for mu in enumerate_partitions(n, 2) {
                for row in mu.addable_rows(2) {
                    let lambda = mu.add_box(row).unwrap();
                    let got = ctx.transition_p(&mu, &lambda).unwrap();
                    let expect = schur2(&lambda, &x, &y) / schur2(&mu, &x, &y);
                    assert_eq!(got.as_exact().unwrap(), &expect, "at {mu} -> {lambda}");
                }
            }
        }
    }

    #[test]
    fn m_row_sums_to_one_for_probability_params() {
        let ctx = sym_ctx(2, &[(1, 2), (1, 2)]);
        for p in enumerate_tableaux(&pt(&[2, 1]), 2) {
            let row = ctx.m_row(&p, KernelVariant::Standard).unwrap();
            let total = row.values().fold(ctx.mode().zero(), |acc, w| &acc + w);
            assert!(total.is_one());
        }
    }

    #[test]
    fn k_summed_over_tableaux_is_psi() {
        let ctx = sym_ctx(2, &[(1, 3), (2, 3)]);
        let lambda = pt(&[2, 1]);
        let mut total = ctx.mode().zero();
        for p in enumerate_tableaux(&lambda, 2) {
            total = &total + &ctx.k_entry(&lambda, &p);
        }
        assert_eq!(total, ctx.psi(&lambda).unwrap());
    }

    #[test]
    fn m_entry_example_from_kernel() {
        // a = (1/2, 1/2); M entry from [[1,1,2,2],[2]] to "append 2 to row 2"
        // is (1/2)(1 - q).
        let ctx = sym_ctx(2, &[(1, 2), (1, 2)]);
        let p = Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2]], 2).unwrap();
        let target = Tableau::from_rows(&[vec![1, 1, 2, 2], vec![2, 2]], 2).unwrap();
        let got = ctx.m_entry(&p, &target).unwrap();
        let expect = &ctx.mode().from_rational(&rat(1, 2))
            * &ctx
                .mode()
                .from_poly(&QPolynomial::from_i64_coeffs(&[1, -1]));
        assert_eq!(got, expect);
    }

    #[test]
    fn conditional_laws_are_probability_vectors() {
        let mode = WeightMode::exact_at(rat(1, 2)).unwrap();
        let ctx = WhittakerContext::probability(2, vec![rat(1, 3), rat(2, 3)], mode).unwrap();
        for n in 1..=4 {
            for lambda in enumerate_partitions(n, 2) {
                // tableau conditional
                let mut total = ctx.mode().zero();
                for p in enumerate_tableaux(&lambda, 2) {
                    let w = ctx.conditional_tableau(&lambda, &p).unwrap();
                    total = &total + &w;
                }
                assert!(total.is_one(), "tableau conditional at {lambda}");
                // type conditional over all compositions
                let mut total = ctx.mode().zero();
                for t1 in 0..=n {
                    let mu = [t1, n - t1];
                    let w = ctx.conditional_type(&lambda, &mu).unwrap();
                    total = &total + &w;
                }
                assert!(total.is_one(), "type conditional at {lambda}");
            }
        }
    }

    #[test]
    fn transition_rows_sum_to_one() {
        let mode = WeightMode::exact_at(rat(1, 3)).unwrap();
        let ctx =
            WhittakerContext::probability(3, vec![rat(1, 2), rat(1, 4), rat(1, 4)], mode).unwrap();
        for n in 0..=5 {
            for mu in enumerate_partitions(n, 3) {
                let mut total = ctx.mode().zero();
                for row in mu.addable_rows(3) {
                    let lambda = mu.add_box(row).unwrap();
                    total = &total + &ctx.transition_p(&mu, &lambda).unwrap();
                }
                assert!(total.is_one(), "transition row at {mu}");
            }
        }
    }

    #[test]
    fn distinct_entry_part_matches_scaled_f_lambda() {
        // For l > n the distinct-entry part of the kappa sum equals
        // binom(l, n) f^lambda(q) / ((1-q)^n Delta(lambda)).
        for n in 1..=4u64 {
            for lambda in enumerate_partitions(n, n as usize) {
                for l in (n as usize + 1)..=(n as usize + 3) {
                    let mut acc = QRationalFunction::zero();
                    for p in enumerate_tableaux(&lambda, l) {
                        if p.distinct_entries().is_some() {
                            acc = &acc + &kappa(&p);
                        }
                    }
                    let binom = QRationalFunction::from_poly(QPolynomial::from_coeffs(vec![
                        big_binomial(l as u64, n),
                    ]));
                    let num = QRationalFunction::from_poly(f_lambda_q(&lambda));
                    let den = QRationalFunction::from_poly(
                        &QPolynomial::one_minus_q_power(1).pow(n)
                            * &crate::shapes::delta_full(&lambda),
                    );
                    let expect = &binom * &(&num / &den);
                    assert_eq!(acc, expect, "distinct part at {lambda}, l={l}");
                }
            }
        }
    }

    #[test]
    fn prop1_single_box_is_exact() {
        // Psi_{(1/l)^l}((1)) equals the limit exactly for every l.
        let report = psi_limit_check(&pt(&[1]), &rat(1, 2), &[2, 4, 8], false).unwrap();
        for (_, err) in &report.errors {
            assert!(err.is_zero());
        }
    }

    #[test]
    fn prop1_errors_shrink() {
        let report = psi_limit_check(&pt(&[2, 1]), &rat(1, 2), &[3, 6, 12], false).unwrap();
        assert!(report.strictly_decreasing, "errors: {:?}", report.errors);
        let bad = psi_limit_check(&pt(&[2, 1]), &rat(1, 2), &[3, 6, 12], true).unwrap();
        assert!(!bad.strictly_decreasing);
    }

    #[test]
    fn rho_scalar_consistent_with_poly() {
        let mode = WeightMode::exact_at(rat(1, 2)).unwrap();
        for q in enumerate_standard(&pt(&[2, 2, 1])) {
            let direct = rho_scalar(&q, &mode);
            let via_poly = mode.from_poly(&crate::tableaux::rho(&q));
            assert_eq!(direct, via_poly);
        }
    }
}
