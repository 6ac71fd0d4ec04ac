//! Reduced rational functions in `q` with a unique canonical form.

use super::poly::QPolynomial;
use crate::{Error, Result};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A quotient of two integer-coefficient polynomials in canonical form:
/// the denominator is nonzero with positive leading coefficient, numerator
/// and denominator have coprime primitive parts and coprime integer contents.
/// Structural equality therefore coincides with mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRationalFunction {
    num: QPolynomial,
    den: QPolynomial,
}

impl QRationalFunction {
    pub fn new(num: QPolynomial, den: QPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPolynomial, den: QPolynomial) -> Self {
        if num.is_zero() {
            return QRationalFunction {
                num: QPolynomial::zero(),
                den: QPolynomial::one(),
            };
        }
        let g = QPolynomial::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            let cp = QPolynomial::monomial(c, 0);
            num = num.div_exact(&cp).expect("content divides");
            den = den.div_exact(&cp).expect("content divides");
        }
        if den.leading_coefficient().is_negative() {
            num = -&num;
            den = -&den;
        }
        QRationalFunction { num, den }
    }

    pub fn zero() -> Self {
        QRationalFunction {
            num: QPolynomial::zero(),
            den: QPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        QRationalFunction {
            num: QPolynomial::one(),
            den: QPolynomial::one(),
        }
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        QRationalFunction {
            num: p,
            den: QPolynomial::one(),
        }
    }

    /// Embeds an exact rational constant.
    pub fn from_rational(r: &BigRational) -> Self {
        Self::reduce(
            QPolynomial::from_coeffs(vec![r.numer().clone()]),
            QPolynomial::from_coeffs(vec![r.denom().clone()]),
        )
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &QPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the reduced denominator is the constant 1, i.e. the value is
    /// a genuine polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator if the value is a genuine polynomial.
    pub fn to_polynomial(&self) -> Result<QPolynomial> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotAPolynomial(self.to_string()))
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    /// Exact evaluation; `None` if the denominator vanishes at `q`.
    pub fn eval_rational(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(q);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(q) / d)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.num.eval_f64(q) / self.den.eval_f64(q)
    }
}

impl Add for &QRationalFunction {
    type Output = QRationalFunction;
    fn add(self, rhs: &QRationalFunction) -> QRationalFunction {
        QRationalFunction::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &QRationalFunction {
    type Output = QRationalFunction;
    fn sub(self, rhs: &QRationalFunction) -> QRationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        QRationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QRationalFunction {
    type Output = QRationalFunction;
    fn mul(self, rhs: &QRationalFunction) -> QRationalFunction {
        QRationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &QRationalFunction {
    type Output = QRationalFunction;
    /// Panics on division by zero; use [`QRationalFunction::inverse`] for the
    /// checked form.
    fn div(self, rhs: &QRationalFunction) -> QRationalFunction {
        assert!(!rhs.is_zero(), "division of rational functions by zero");
        QRationalFunction::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for QRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::str::FromStr for QRationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_rational_function(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64_coeffs(c)
    }

    #[test]
    fn cancellation_to_one() {
        let r = QRationalFunction::new(poly(&[1, -1]), poly(&[1, -1])).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn factor_cancellation() {
        // (1 - q^2)/(1 - q) = 1 + q
        let r = QRationalFunction::new(poly(&[1, 0, -1]), poly(&[1, -1])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &poly(&[1, 1]));
    }

    #[test]
    fn eval_at_half() {
        // (1 - q^3)/(1 - q) at q = 1/2 equals 7/4
        let r = QRationalFunction::new(poly(&[1, 0, 0, -1]), poly(&[1, -1])).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let v = r.eval_rational(&half).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(7), BigInt::from(4)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(QRationalFunction::new(poly(&[1]), QPolynomial::zero()).is_err());
    }

    #[test]
    fn content_normalization() {
        // (2 + 2q)/4 reduces to (1 + q)/2
        let r = QRationalFunction::new(poly(&[2, 2]), poly(&[4])).unwrap();
        assert_eq!(r.numerator(), &poly(&[1, 1]));
        assert_eq!(r.denominator(), &poly(&[2]));
    }
}
