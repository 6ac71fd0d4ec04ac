//! Integer partitions, interlacing, and the box-adding operator `L`.

use crate::qarith::{QPolynomial, WeightMode, WeightScalar};
use crate::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A weakly decreasing sequence of positive integers, stored without trailing
/// zeros but compared with implicit zeros beyond its length.
///
/// The derived ordering (lexicographic on parts) is the deterministic order
/// used by every enumeration in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Validates weak decrease; trailing zeros are trimmed.
    pub fn new(parts: impl Into<Vec<u64>>) -> Result<Self> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::Parse(format!(
                    "not weakly decreasing: {:?}",
                    parts
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::Parse("interior zero part".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of (positive) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part, 1-based; zero beyond the stored length.
    pub fn part(&self, i: usize) -> u64 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// |lambda|, the number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Componentwise containment (`self` fits inside `other`).
    pub fn contained_in(&self, other: &Partition) -> bool {
        (1..=self.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// `lambda + e_row` (1-based row); errors when the result is not a
    /// partition.
    pub fn add_box(&self, row: usize) -> Result<Partition> {
        if row == 0 || (row >= 2 && self.part(row - 1) <= self.part(row)) {
            return Err(Error::InvalidRow { row });
        }
        let mut parts = self.parts.clone();
        if row <= parts.len() {
            parts[row - 1] += 1;
        } else if row == parts.len() + 1 {
            parts.push(1);
        } else {
            return Err(Error::InvalidRow { row });
        }
        Ok(Partition { parts })
    }

    /// `lambda - e_row`; errors when the result is not a partition.
    pub fn remove_box(&self, row: usize) -> Result<Partition> {
        if row == 0 || row > self.len() || self.part(row) <= self.part(row + 1) {
            return Err(Error::InvalidRow { row });
        }
        let mut parts = self.parts.clone();
        parts[row - 1] -= 1;
        if parts[row - 1] == 0 {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Rows where a box can be added, subject to at most `max_parts` parts.
    pub fn addable_rows(&self, max_parts: usize) -> Vec<usize> {
        (1..=(self.len() + 1).min(max_parts))
            .filter(|&i| i == 1 || self.part(i - 1) > self.part(i))
            .collect()
    }

    pub fn removable_rows(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    /// The unique row where `larger` exceeds `smaller`, when `larger` covers
    /// `smaller` in the Young lattice (one extra box).
    pub fn growth_row(smaller: &Partition, larger: &Partition) -> Option<usize> {
        if larger.size() != smaller.size() + 1 {
            return None;
        }
        let mut row = None;
        for i in 1..=larger.len() {
            match larger.part(i).checked_sub(smaller.part(i)) {
                Some(0) => {}
                Some(1) if row.is_none() => row = Some(i),
                _ => return None,
            }
        }
        row
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Interlacing `mu ≺ lambda`: `lambda_{i+1} <= mu_i <= lambda_i` for all `i`
/// (with implicit zeros).
pub fn interlaces(mu: &Partition, lambda: &Partition) -> bool {
    let rows = mu.len().max(lambda.len());
    (1..=rows).all(|i| lambda.part(i + 1) <= mu.part(i) && mu.part(i) <= lambda.part(i))
}

/// All partitions of `n` with at most `max_parts` parts, lexicographically
/// decreasing.
pub fn enumerate_partitions(n: u64, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u64, max_part: u64, slots: usize, current: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted_unchecked(current.clone()));
            return;
        }
        if slots == 0 || max_part == 0 {
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            current.push(p);
            rec(remaining - p, p, slots - 1, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), max_parts, &mut current, &mut out);
    out
}

/// All partitions of every size `0..=max_size` with at most `max_parts`
/// parts, ordered by size then lexicographically decreasing.
pub fn partitions_up_to(max_size: u64, max_parts: usize) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(|n| enumerate_partitions(n, max_parts))
        .collect()
}

/// All `mu ≺ lambda` with at most `max_parts` parts, in lexicographically
/// decreasing order.
pub fn interlacings_below(lambda: &Partition, max_parts: usize) -> Vec<Partition> {
    if lambda.len() > max_parts + 1 {
        return Vec::new();
    }
    let rows = lambda.len().min(max_parts);
    let mut out = Vec::new();
    let mut current: Vec<u64> = Vec::new();
    fn rec(lambda: &Partition, rows: usize, i: usize, current: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if i > rows {
            let mut parts = current.clone();
            while parts.last() == Some(&0) {
                parts.pop();
            }
            out.push(Partition::from_sorted_unchecked(parts));
            return;
        }
        let lo = lambda.part(i + 1);
        let hi = lambda.part(i);
        for v in (lo..=hi).rev() {
            current.push(v);
            rec(lambda, rows, i + 1, current, out);
            current.pop();
        }
    }
    rec(lambda, rows, 1, &mut current, &mut out);
    out
}

/// `Delta_l(lambda) = prod_{i=1}^{l-1} (lambda_i - lambda_{i+1})_q`.
pub fn delta(lambda: &Partition, l: usize) -> Result<QPolynomial> {
    if lambda.len() > l {
        return Err(Error::TooManyParts {
            parts: lambda.len(),
            limit: l,
        });
    }
    let mut acc = QPolynomial::one();
    for i in 1..l {
        acc = &acc * &crate::qarith::qpochhammer(lambda.part(i) - lambda.part(i + 1));
    }
    Ok(acc)
}

/// `Delta(lambda)`, the variant running over all parts of `lambda`
/// (so the last factor is `(lambda_m)_q` for `m` the number of parts).
pub fn delta_full(lambda: &Partition) -> QPolynomial {
    delta(lambda, lambda.len() + 1).expect("bound exceeds part count")
}

/// `delta` evaluated in a weight mode.
pub fn delta_scalar(lambda: &Partition, l: usize, mode: &WeightMode) -> Result<WeightScalar> {
    if lambda.len() > l {
        return Err(Error::TooManyParts {
            parts: lambda.len(),
            limit: l,
        });
    }
    let mut acc = mode.one();
    for i in 1..l {
        acc = &acc * &mode.poch(lambda.part(i) - lambda.part(i + 1));
    }
    Ok(acc)
}

/// The coefficient `c_i(lambda)`: `1 - q^{lambda_i - lambda_{i+1} + 1}` for
/// `i < l`, and `1` for `i = l`.
pub fn l_coefficient(lambda: &Partition, i: usize, l: usize) -> QPolynomial {
    if i == l {
        QPolynomial::one()
    } else {
        QPolynomial::one_minus_q_power(lambda.part(i) - lambda.part(i + 1) + 1)
    }
}

/// Kernel entry `L(lambda, mu)`: `c_i(lambda)` when `mu = lambda + e_i` for
/// an addable row `i <= l`, zero otherwise.
pub fn l_entry(lambda: &Partition, mu: &Partition, l: usize) -> QPolynomial {
    match Partition::growth_row(lambda, mu) {
        Some(i) if i <= l => l_coefficient(lambda, i, l),
        _ => QPolynomial::zero(),
    }
}

/// All nonzero moves of `L` out of `lambda` in `Omega^l`: `(row, lambda + e_row,
/// c_row(lambda))`.
pub fn l_moves(lambda: &Partition, l: usize) -> Vec<(usize, Partition, QPolynomial)> {
    lambda
        .addable_rows(l)
        .into_iter()
        .map(|i| {
            let mu = lambda.add_box(i).expect("addable row");
            let c = l_coefficient(lambda, i, l);
            (i, mu, c)
        })
        .collect()
}

/// Applies the kernel to a function on partitions:
/// `(L f)(lambda) = sum over addable rows i of c_i(lambda) f(lambda + e_i)`.
pub fn l_apply<F>(
    lambda: &Partition,
    l: usize,
    mode: &WeightMode,
    mut f: F,
) -> crate::Result<WeightScalar>
where
    F: FnMut(&Partition) -> crate::Result<WeightScalar>,
{
    let mut acc = mode.zero();
    for (_, mu, c) in l_moves(lambda, l) {
        acc = &acc + &(&mode.from_poly(&c) * &f(&mu)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&Partition::empty(), &pt(&[1])));
        assert!(interlaces(&pt(&[2]), &pt(&[2, 1])));
        assert!(!interlaces(&pt(&[1]), &pt(&[3, 2])));
    }

    #[test]
    fn interlacing_after_row_one_box() {
        for lambda in [pt(&[1]), pt(&[4]), pt(&[7])] {
            let bigger = lambda.add_box(1).unwrap();
            assert!(interlaces(&lambda, &bigger));
        }
    }

    #[test]
    fn add_box_examples() {
        assert_eq!(Partition::empty().add_box(1).unwrap(), pt(&[1]));
        assert_eq!(pt(&[2, 1]).add_box(2).unwrap(), pt(&[2, 2]));
        assert!(matches!(
            pt(&[2, 2]).add_box(2),
            Err(Error::InvalidRow { row: 2 })
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0, 3), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(3, 2), vec![pt(&[3]), pt(&[2, 1])]);
        assert_eq!(enumerate_partitions(4, 8).len(), 5);
        // lexicographically decreasing
        let all = enumerate_partitions(6, 6);
        for w in all.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&Partition::empty(), 4).unwrap(), QPolynomial::one());
        assert_eq!(delta(&pt(&[1, 1]), 2).unwrap(), QPolynomial::one());
        // Delta((2,1)) = (1)_q (1)_q = (1 - q)^2
        assert_eq!(
            delta_full(&pt(&[2, 1])),
            QPolynomial::from_i64_coeffs(&[1, -2, 1])
        );
        assert!(delta(&pt(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn l_entry_examples() {
        assert_eq!(
            l_entry(&Partition::empty(), &pt(&[1]), 1),
            QPolynomial::one()
        );
        // c_1((1)) with l=2: 1 - q^{1-0+1} = 1 - q^2
        assert_eq!(
            l_entry(&pt(&[1]), &pt(&[2]), 2),
            QPolynomial::from_i64_coeffs(&[1, 0, -1])
        );
        assert_eq!(l_entry(&pt(&[1]), &pt(&[1, 1]), 2), QPolynomial::one());
        assert_eq!(l_entry(&pt(&[1]), &pt(&[3]), 2), QPolynomial::zero());
    }

    #[test]
    fn l_moves_at_most_l() {
        for lambda in partitions_up_to(5, 3) {
            for l in lambda.len().max(1)..=4 {
                let moves = l_moves(&lambda, l);
                assert!(moves.len() <= l);
                for (_, mu, c) in &moves {
                    assert_eq!(&l_entry(&lambda, mu, l), c);
                    assert!(!c.is_zero());
                }
            }
        }
    }

    #[test]
    fn delta_at_zero_is_one() {
        use num_traits::One;
        for lambda in partitions_up_to(6, 4) {
            let d = delta(&lambda, 4).unwrap();
            assert!(d.coeff(0).is_one());
        }
    }

    #[test]
    fn interlacings_below_consistency() {
        let lambda = pt(&[3, 1]);
        let below = interlacings_below(&lambda, 1);
        assert_eq!(below, vec![pt(&[3]), pt(&[2]), pt(&[1])]);
        for mu in &below {
            assert!(interlaces(mu, &lambda));
        }
        // two-part lambda with max_parts 2 keeps mu_2 in [0, 1]
        let wide = interlacings_below(&lambda, 2);
        assert_eq!(wide.len(), 6);
    }
}
