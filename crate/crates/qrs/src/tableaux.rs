//! Semistandard and standard tableaux as shape chains, and the weight
//! functions `kappa` and `rho`.
//!
//! A tableau over the alphabet `1..=l` is stored as its Gelfand-Tsetlin
//! pattern: the chain of shapes `lambda^1 ≺ lambda^2 ≺ ... ≺ lambda^l`,
//! where `lambda^i` is the shape of the entries `<= i`. Interlacing of
//! consecutive shapes is exactly the column-strictness of the row form, and
//! every weight formula is indexed by the pattern entries `lambda^i_j`.

use crate::qarith::{qbinomial, QExp, QPolynomial, QRationalFunction, WeightMode, WeightScalar};
use crate::shapes::{delta, interlaces, interlacings_below, Partition};
use crate::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A semistandard tableau on the alphabet `1..=l`, as an interlacing shape
/// chain of length `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    l: usize,
    chain: Vec<Partition>,
}

impl Tableau {
    pub fn new(l: usize, chain: Vec<Partition>) -> Result<Self> {
        if l == 0 || chain.len() != l {
            return Err(Error::MalformedTableau {
                row: 0,
                col: 0,
                reason: format!("chain length {} does not match alphabet {l}", chain.len()),
            });
        }
        for (idx, shape) in chain.iter().enumerate() {
            let level = idx + 1;
            if shape.len() > level {
                return Err(Error::TooManyParts {
                    parts: shape.len(),
                    limit: level,
                });
            }
            if idx > 0 && !interlaces(&chain[idx - 1], shape) {
                return Err(Error::InterlacingViolation);
            }
        }
        Ok(Tableau { l, chain })
    }

    pub fn empty(l: usize) -> Self {
        assert!(l >= 1, "alphabet must be nonempty");
        Tableau {
            l,
            chain: vec![Partition::empty(); l],
        }
    }

    /// A single-box tableau containing the letter `k`.
    pub fn single(l: usize, k: usize) -> Result<Self> {
        if k == 0 || k > l {
            return Err(Error::LetterOutOfRange {
                letter: k,
                alphabet: l,
            });
        }
        let one = Partition::new(vec![1]).unwrap();
        let chain = (1..=l)
            .map(|i| if i >= k { one.clone() } else { Partition::empty() })
            .collect();
        Ok(Tableau { l, chain })
    }

    pub fn alphabet(&self) -> usize {
        self.l
    }

    /// The shape `sh P = lambda^l`.
    pub fn shape(&self) -> &Partition {
        &self.chain[self.l - 1]
    }

    /// The level shape `lambda^i = sh P^i`, 1-based.
    pub fn level(&self, i: usize) -> &Partition {
        &self.chain[i - 1]
    }

    pub fn chain(&self) -> &[Partition] {
        &self.chain
    }

    /// Pattern entry `lambda^i_j` with the boundary convention: `None` when
    /// the entry is undefined (`j = 0` or `j > i`), which makes any q-power
    /// referencing it vanish; within-pattern rows beyond the stored parts are
    /// genuine zeros.
    pub fn pattern_entry(&self, i: usize, j: usize) -> Option<u64> {
        debug_assert!(i >= 1 && i <= self.l);
        if j == 0 || j > i {
            None
        } else {
            Some(self.chain[i - 1].part(j))
        }
    }

    /// `ty P`: the number of copies of each letter.
    pub fn type_vector(&self) -> Vec<u64> {
        let mut prev = 0;
        self.chain
            .iter()
            .map(|s| {
                let n = s.size();
                let t = n - prev;
                prev = n;
                t
            })
            .collect()
    }

    /// Number of boxes.
    pub fn size(&self) -> u64 {
        self.shape().size()
    }

    pub fn is_empty(&self) -> bool {
        self.shape().is_empty()
    }

    /// Row-entry rendering; row `j` lists its entries left to right.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        let rows = self.shape().len();
        let mut out = vec![Vec::new(); rows];
        let mut prev = Partition::empty();
        for (idx, shape) in self.chain.iter().enumerate() {
            let letter = idx + 1;
            for (j, row) in out.iter_mut().enumerate() {
                let count = shape.part(j + 1) - prev.part(j + 1);
                row.extend(std::iter::repeat_n(letter, count as usize));
            }
            prev = shape.clone();
        }
        out
    }

    /// Parses the row form, validating weakly increasing rows and strictly
    /// increasing columns with entries in `1..=l`.
    pub fn from_rows(rows: &[Vec<usize>], l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::LetterOutOfRange {
                letter: 0,
                alphabet: 0,
            });
        }
        for (j, row) in rows.iter().enumerate() {
            if j + 1 < rows.len() && rows[j + 1].len() > row.len() {
                return Err(Error::MalformedTableau {
                    row: j + 2,
                    col: 1,
                    reason: "row longer than the row above".into(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                if x == 0 || x > l {
                    return Err(Error::LetterOutOfRange {
                        letter: x,
                        alphabet: l,
                    });
                }
                if c > 0 && row[c - 1] > x {
                    return Err(Error::MalformedTableau {
                        row: j + 1,
                        col: c + 1,
                        reason: "row not weakly increasing".into(),
                    });
                }
                if j > 0 {
                    let above = rows[j - 1][c];
                    if above >= x {
                        return Err(Error::MalformedTableau {
                            row: j + 1,
                            col: c + 1,
                            reason: "column not strictly increasing".into(),
                        });
                    }
                }
            }
        }
        let chain = (1..=l)
            .map(|i| {
                let parts: Vec<u64> = rows
                    .iter()
                    .map(|row| row.iter().filter(|&&x| x <= i).count() as u64)
                    .take_while(|&c| c > 0)
                    .collect();
                Partition::new(parts)
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(l, chain)
    }

    /// The letters that occur, when each occurs at most once.
    pub fn distinct_entries(&self) -> Option<Vec<usize>> {
        let ty = self.type_vector();
        if ty.iter().any(|&t| t > 1) {
            return None;
        }
        Some(
            ty.iter()
                .enumerate()
                .filter(|(_, &t)| t == 1)
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }

    /// Replaces the distinct entries `i_1 < ... < i_n` by `1..=n`, keeping
    /// the shape; errors when an entry repeats.
    pub fn standardize(&self) -> Result<StandardTableau> {
        let ty = self.type_vector();
        if let Some(idx) = ty.iter().position(|&t| t > 1) {
            return Err(Error::RepeatedEntry { letter: idx + 1 });
        }
        let chain: Vec<Partition> = self
            .chain
            .iter()
            .zip(ty.iter())
            .filter(|(_, &t)| t == 1)
            .map(|(s, _)| s.clone())
            .collect();
        StandardTableau::new(chain)
    }

    /// Re-embeds a distinct-entry tableau with a new increasing letter set of
    /// the same cardinality inside the same alphabet.
    pub fn with_entries_relabeled(&self, letters: &[usize]) -> Result<Tableau> {
        let entries = self.distinct_entries().ok_or(Error::RepeatedEntry {
            letter: 0,
        })?;
        if letters.len() != entries.len()
            || letters.windows(2).any(|w| w[0] >= w[1])
            || letters.last().is_some_and(|&m| m > self.l)
            || letters.first().is_some_and(|&m| m == 0)
        {
            return Err(Error::Parse(format!(
                "invalid relabeling letters {letters:?}"
            )));
        }
        let jumps: Vec<&Partition> = self
            .chain
            .iter()
            .zip(self.type_vector())
            .filter(|(_, t)| *t == 1)
            .map(|(s, _)| s)
            .collect();
        let mut chain = Vec::with_capacity(self.l);
        for i in 1..=self.l {
            let k = letters.iter().filter(|&&m| m <= i).count();
            chain.push(if k == 0 {
                Partition::empty()
            } else {
                jumps[k - 1].clone()
            });
        }
        Tableau::new(self.l, chain)
    }

    /// Adds one box to each level `start..=l` at the given rows (internal to
    /// the insertion step). `None` when the result is not a tableau, which
    /// only mutated kernels can produce.
    pub(crate) fn try_apply_growth(&self, start: usize, rows: &[usize]) -> Option<Tableau> {
        debug_assert_eq!(rows.len(), self.l - start + 1);
        let mut chain = self.chain.clone();
        for (offset, &row) in rows.iter().enumerate() {
            let level = start + offset;
            chain[level - 1] = chain[level - 1].add_box(row).ok()?;
        }
        Tableau::new(self.l, chain).ok()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_rows();
        write!(f, "[")?;
        for (j, row) in rows.iter().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "[")?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize)]
struct TableauRepr<'a> {
    l: usize,
    shape_chain: &'a [Partition],
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauRepr {
            l: self.l,
            shape_chain: &self.chain,
        }
        .serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableauInput {
    Chain {
        l: usize,
        shape_chain: Vec<Partition>,
    },
    Rows {
        rows: Vec<Vec<usize>>,
        l: Option<usize>,
    },
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match TableauInput::deserialize(d)? {
            TableauInput::Chain { l, shape_chain } => {
                Tableau::new(l, shape_chain).map_err(serde::de::Error::custom)
            }
            TableauInput::Rows { rows, l } => {
                let max = rows.iter().flatten().copied().max().unwrap_or(1);
                Tableau::from_rows(&rows, l.unwrap_or(max)).map_err(serde::de::Error::custom)
            }
        }
    }
}

/// A standard tableau of size `n`, as a saturated shape chain
/// `mu^1 ⊂ ... ⊂ mu^n` with one box added per step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    chain: Vec<Partition>,
}

impl StandardTableau {
    pub fn new(chain: Vec<Partition>) -> Result<Self> {
        let mut prev = Partition::empty();
        for (idx, shape) in chain.iter().enumerate() {
            if shape.size() != idx as u64 + 1 || Partition::growth_row(&prev, shape).is_none() {
                return Err(Error::MalformedTableau {
                    row: 0,
                    col: 0,
                    reason: format!("chain not saturated at step {}", idx + 1),
                });
            }
            prev = shape.clone();
        }
        Ok(StandardTableau { chain })
    }

    pub fn empty() -> Self {
        StandardTableau { chain: Vec::new() }
    }

    pub fn single() -> Self {
        StandardTableau {
            chain: vec![Partition::new(vec![1]).unwrap()],
        }
    }

    pub fn n(&self) -> usize {
        self.chain.len()
    }

    pub fn shape(&self) -> Partition {
        self.chain.last().cloned().unwrap_or_else(Partition::empty)
    }

    /// `mu^i`, 1-based; `mu^0` is the empty shape.
    pub fn level(&self, i: usize) -> Partition {
        if i == 0 {
            Partition::empty()
        } else {
            self.chain[i - 1].clone()
        }
    }

    pub fn chain(&self) -> &[Partition] {
        &self.chain
    }

    /// The row receiving box `i`.
    pub fn growth_row(&self, i: usize) -> usize {
        let prev = self.level(i - 1);
        Partition::growth_row(&prev, &self.chain[i - 1]).expect("saturated chain")
    }

    /// Extends by box `n+1` in the given row.
    pub fn extend(&self, row: usize) -> Result<StandardTableau> {
        let next = self.shape().add_box(row)?;
        let mut chain = self.chain.clone();
        chain.push(next);
        Ok(StandardTableau { chain })
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        let rows = self.shape().len();
        let mut out = vec![Vec::new(); rows];
        for i in 1..=self.n() {
            out[self.growth_row(i) - 1].push(i);
        }
        out
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n: usize = rows.iter().map(|r| r.len()).sum();
        let mut row_of = vec![0usize; n + 1];
        for (j, row) in rows.iter().enumerate() {
            for &x in row {
                if x == 0 || x > n || row_of[x] != 0 {
                    return Err(Error::MalformedTableau {
                        row: j + 1,
                        col: 0,
                        reason: format!("entries must be a permutation of 1..={n}"),
                    });
                }
                row_of[x] = j + 1;
            }
        }
        let mut st = StandardTableau::empty();
        for &row in &row_of[1..=n] {
            st = st.extend(row)?;
        }
        Ok(st)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_rows();
        write!(f, "[")?;
        for (j, row) in rows.iter().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "[")?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize)]
struct StdRepr<'a> {
    n: usize,
    shape_chain: &'a [Partition],
}

impl Serialize for StandardTableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StdRepr {
            n: self.n(),
            shape_chain: &self.chain,
        }
        .serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StdInput {
    Chain {
        #[allow(dead_code)]
        n: Option<usize>,
        shape_chain: Vec<Partition>,
    },
    Rows {
        rows: Vec<Vec<usize>>,
    },
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match StdInput::deserialize(d)? {
            StdInput::Chain { shape_chain, .. } => {
                StandardTableau::new(shape_chain).map_err(serde::de::Error::custom)
            }
            StdInput::Rows { rows } => {
                StandardTableau::from_rows(&rows).map_err(serde::de::Error::custom)
            }
        }
    }
}

/// `kappa(P)` as the ratio of q-Pochhammer products over the pattern.
pub fn kappa(p: &Tableau) -> QRationalFunction {
    let l = p.alphabet();
    let mut num = QPolynomial::one();
    for j in 2..l {
        let shape = p.level(j);
        for i in 1..j {
            num = &num * &crate::qarith::qpochhammer(shape.part(i) - shape.part(i + 1));
        }
    }
    let mut den = QPolynomial::one();
    for j in 1..l {
        let lo = p.level(j);
        let hi = p.level(j + 1);
        for i in 1..=j {
            den = &den * &crate::qarith::qpochhammer(lo.part(i) - hi.part(i + 1));
            den = &den * &crate::qarith::qpochhammer(hi.part(i) - lo.part(i));
        }
    }
    QRationalFunction::new(num, den).expect("pochhammer denominators are nonzero")
}

/// `kappa(P)` as `Delta_l(lambda)^{-1}` times a product of q-binomials; an
/// independent route used to cross-check [`kappa`].
pub fn kappa_binomial(p: &Tableau) -> QRationalFunction {
    let l = p.alphabet();
    let mut prod = QPolynomial::one();
    for i in 2..=l {
        let shape = p.level(i);
        let below = p.level(i - 1);
        for j in 1..i {
            let n = shape.part(j) - shape.part(j + 1);
            let m = (shape.part(j) - below.part(j)) as i64;
            prod = &prod * &qbinomial(n, m);
        }
    }
    let d = delta(p.shape(), l).expect("shape fits alphabet");
    QRationalFunction::new(prod, d).expect("delta is nonzero")
}

/// `kappa(P)` evaluated directly in a weight mode (avoids symbolic reduction
/// in the exact and float modes).
pub fn kappa_scalar(p: &Tableau, mode: &WeightMode) -> WeightScalar {
    let l = p.alphabet();
    let mut num = mode.one();
    for j in 2..l {
        let shape = p.level(j);
        for i in 1..j {
            num = &num * &mode.poch(shape.part(i) - shape.part(i + 1));
        }
    }
    let mut den = mode.one();
    for j in 1..l {
        let lo = p.level(j);
        let hi = p.level(j + 1);
        for i in 1..=j {
            den = &den * &mode.poch(lo.part(i) - hi.part(i + 1));
            den = &den * &mode.poch(hi.part(i) - lo.part(i));
        }
    }
    &num / &den
}

/// `rho(Q)`: one factor `1 - q^{mu^i_r - mu^i_{r+1}}` per step `i`, evaluated
/// at the row `r` receiving box `i`.
pub fn rho(q: &StandardTableau) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for i in 1..=q.n() {
        let r = q.growth_row(i);
        let shape = q.level(i);
        acc = &acc * &QPolynomial::one_minus_q_power(shape.part(r) - shape.part(r + 1));
    }
    acc
}

/// [`rho`] in a weight mode.
pub fn rho_scalar(q: &StandardTableau, mode: &WeightMode) -> WeightScalar {
    let mut acc = mode.one();
    for i in 1..=q.n() {
        let r = q.growth_row(i);
        let shape = q.level(i);
        acc = &acc * &mode.one_minus_q_pow(QExp::Finite(shape.part(r) - shape.part(r + 1)));
    }
    acc
}

/// Checks `kappa(P) = rho(P-hat) / ((1-q)^n Delta_l(lambda))` exactly for a
/// distinct-entry tableau.
pub fn check_eq3(p: &Tableau) -> Result<bool> {
    let hat = p.standardize()?;
    let n = hat.n() as u64;
    let lhs = kappa(p);
    let dl = delta(p.shape(), p.alphabet()).expect("shape fits alphabet");
    let one_minus_q = QPolynomial::one_minus_q_power(1);
    let den = &one_minus_q.pow(n) * &dl;
    let rhs = QRationalFunction::new(rho(&hat), den)?;
    Ok(lhs == rhs)
}

/// All tableaux with the given shape over the alphabet `1..=l`, in a
/// deterministic order (recursive interlacing extension, lexicographically
/// decreasing at each level).
pub fn enumerate_tableaux(shape: &Partition, l: usize) -> Vec<Tableau> {
    if shape.len() > l {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut suffix = vec![shape.clone()];
    fn rec(level: usize, suffix: &mut Vec<Partition>, l: usize, out: &mut Vec<Tableau>) {
        if level == 1 {
            let mut chain = suffix.clone();
            chain.reverse();
            out.push(Tableau { l, chain });
            return;
        }
        let top = suffix.last().unwrap().clone();
        for mu in interlacings_below(&top, level - 1) {
            suffix.push(mu);
            rec(level - 1, suffix, l, out);
            suffix.pop();
        }
    }
    rec(l, &mut suffix, l, &mut out);
    out
}

/// All standard tableaux of the given shape, deterministic order.
pub fn enumerate_standard(shape: &Partition) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    let mut suffix = vec![shape.clone()];
    fn rec(suffix: &mut Vec<Partition>, out: &mut Vec<StandardTableau>) {
        let top = suffix.last().unwrap().clone();
        if top.is_empty() {
            let mut chain = suffix.clone();
            chain.pop();
            chain.reverse();
            out.push(StandardTableau { chain });
            return;
        }
        for row in top.removable_rows() {
            suffix.push(top.remove_box(row).unwrap());
            rec(suffix, out);
            suffix.pop();
        }
    }
    rec(&mut suffix, &mut out);
    out
}
