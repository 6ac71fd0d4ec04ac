//! Dense integer-coefficient polynomials in `q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in `q` with big-integer coefficients.
///
/// `coeffs[e]` is the coefficient of `q^e`; trailing zeros are trimmed, so the
/// zero polynomial is the empty vector and a nonzero polynomial always has a
/// nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        QPolynomial::from_coeffs(vec![BigInt::from(c)])
    }

    /// Builds a polynomial from coefficients indexed by exponent, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        QPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * q^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        QPolynomial { coeffs }
    }

    /// `q^e`.
    pub fn q_power(e: u64) -> Self {
        QPolynomial::monomial(BigInt::one(), e as usize)
    }

    /// `1 - q^e`; equals zero for `e == 0`.
    pub fn one_minus_q_power(e: u64) -> Self {
        &QPolynomial::one() - &QPolynomial::q_power(e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Greatest common divisor of the coefficients (nonnegative; 0 for zero).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides all coefficients by the content, keeping signs.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_int(&c)
    }

    fn div_int(&self, d: &BigInt) -> Self {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut acc = QPolynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` if `divisor` does not divide `self` over the
    /// integers.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Option<QPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QPolynomial::zero());
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coefficient();
        let mut rem = self.coeffs.clone();
        let dn = rem.len() - 1;
        if dn < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate().take(dd) {
                let sub = dc * &c;
                rem[i + j] -= sub;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPolynomial::from_coeffs(quot))
    }

    /// Fraction-free pseudo-remainder of `self` by `divisor` (nonzero).
    fn pseudo_rem(&self, divisor: &QPolynomial) -> QPolynomial {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading_coefficient();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let lr = rem.leading_coefficient();
            let shift = QPolynomial::monomial(lr, dr - dd);
            rem = &rem.scale(&lead) - &(&shift * divisor);
        }
        rem
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Primitive polynomial GCD with positive leading coefficient.
    pub fn gcd(a: &QPolynomial, b: &QPolynomial) -> QPolynomial {
        let mut x = a.primitive_part();
        let mut y = b.primitive_part();
        while !y.is_zero() {
            let r = x.pseudo_rem(&y).primitive_part();
            x = y;
            y = r;
        }
        if x.leading_coefficient().is_negative() {
            x = -&x;
        }
        x
    }

    /// Evaluation at an exact rational point.
    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * q + big_to_f64(c);
        }
        acc
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(d) = rhs.coeffs.get(i) {
                c += d;
            }
            coeffs.push(c);
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for QPolynomial {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_polynomial(s)
    }
}

/// The q-Pochhammer symbol `(n)_q = (1 - q)(1 - q^2)...(1 - q^n)`.
///
/// `(0)_q = 1`; the degree of `(n)_q` is `n(n+1)/2`.
pub fn qpochhammer(n: u64) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for i in 1..=n {
        acc = &acc * &QPolynomial::one_minus_q_power(i);
    }
    acc
}

/// The q-binomial coefficient `[n m]_q = (n)_q / ((m)_q (n-m)_q)`.
///
/// Zero when `m < 0` or `m > n`; the division is exact and the result a
/// genuine polynomial with nonnegative coefficients.
pub fn qbinomial(n: u64, m: i64) -> QPolynomial {
    if m < 0 || (m as u64) > n {
        return QPolynomial::zero();
    }
    let m = m as u64;
    let den = &qpochhammer(m) * &qpochhammer(n - m);
    qpochhammer(n)
        .div_exact(&den)
        .expect("q-binomial division is exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive product oracle: multiplies out `(1 - q^i)` factors one by one
    /// with schoolbook arithmetic over i128 coefficient vectors.
    fn poch_oracle(n: u64) -> Vec<i128> {
        let mut acc = vec![1i128];
        for i in 1..=n {
            let mut factor = vec![0i128; i as usize + 1];
            factor[0] = 1;
            factor[i as usize] = -1;
            let mut out = vec![0i128; acc.len() + factor.len() - 1];
            for (a, &ca) in acc.iter().enumerate() {
                for (b, &cb) in factor.iter().enumerate() {
                    out[a + b] += ca * cb;
                }
            }
            acc = out;
        }
        while acc.last() == Some(&0) {
            acc.pop();
        }
        acc
    }

    fn as_i128(p: &QPolynomial) -> Vec<i128> {
        use num_traits::ToPrimitive;
        p.coeffs().iter().map(|c| c.to_i128().unwrap()).collect()
    }

    #[test]
    fn pochhammer_small_values() {
        assert_eq!(qpochhammer(0), QPolynomial::one());
        assert_eq!(qpochhammer(1), QPolynomial::from_i64_coeffs(&[1, -1]));
        assert_eq!(as_i128(&qpochhammer(3)), poch_oracle(3));
        for n in 0..=8 {
            assert_eq!(as_i128(&qpochhammer(n)), poch_oracle(n), "n = {n}");
            assert_eq!(
                qpochhammer(n).degree().unwrap() as u64,
                n * (n + 1) / 2,
                "degree of ({n})_q"
            );
        }
    }

    #[test]
    fn pochhammer_at_zero_is_one() {
        for n in 0..12 {
            assert_eq!(qpochhammer(n).coeff(0), BigInt::one());
        }
    }

    /// Pascal-type recursion oracle: `[n m] = [n-1 m-1] + q^m [n-1 m]`.
    fn qbinom_pascal(n: u64, m: i64) -> QPolynomial {
        if m < 0 || m as u64 > n {
            return QPolynomial::zero();
        }
        if n == 0 {
            return QPolynomial::one();
        }
        let a = qbinom_pascal(n - 1, m - 1);
        let b = qbinom_pascal(n - 1, m);
        &a + &(&QPolynomial::q_power(m as u64) * &b)
    }

    #[test]
    fn qbinomial_edges_and_pascal() {
        for a in 0..6 {
            assert_eq!(qbinomial(a, 0), QPolynomial::one());
            if a >= 1 {
                // [a 1]_q = 1 + q + ... + q^{a-1}
                let expect = QPolynomial::from_coeffs(vec![BigInt::one(); a as usize]);
                assert_eq!(qbinomial(a, 1), expect);
            }
            assert_eq!(qbinomial(a, -1), QPolynomial::zero());
            assert_eq!(qbinomial(a, a as i64 + 1), QPolynomial::zero());
        }
        for n in 0..=7 {
            for m in 0..=n {
                assert_eq!(qbinomial(n, m as i64), qbinom_pascal(n, m as i64));
            }
        }
    }

    #[test]
    fn qbinomial_symmetry_and_nonnegative() {
        for n in 0..=8u64 {
            for m in 0..=n {
                let b = qbinomial(n, m as i64);
                assert_eq!(b, qbinomial(n, (n - m) as i64));
                assert!(b.coeffs().iter().all(|c| !c.is_negative()));
            }
        }
    }

    #[test]
    fn div_exact_detects_remainders() {
        let p = QPolynomial::from_i64_coeffs(&[1, 1]); // 1 + q
        let d = QPolynomial::from_i64_coeffs(&[1, -1]); // 1 - q
        assert!(p.div_exact(&d).is_none());
        let prod = &p * &d;
        assert_eq!(prod.div_exact(&d), Some(p));
    }

    #[test]
    fn gcd_of_scaled_pair() {
        let a = QPolynomial::from_i64_coeffs(&[1, -1]);
        let b = QPolynomial::from_i64_coeffs(&[1, 0, -1]); // (1-q)(1+q)
        let g = QPolynomial::gcd(&a, &b);
        // gcd is primitive with positive leading coefficient: q - 1
        assert_eq!(g, QPolynomial::from_i64_coeffs(&[-1, 1]));
    }

    #[test]
    fn display_matches_grammar() {
        let p = QPolynomial::from_i64_coeffs(&[1, 0, -1, 2]);
        assert_eq!(p.to_string(), "1 - q^2 + 2*q^3");
        assert_eq!(QPolynomial::zero().to_string(), "0");
        assert_eq!(QPolynomial::from_i64_coeffs(&[0, -1]).to_string(), "-q");
    }
}
