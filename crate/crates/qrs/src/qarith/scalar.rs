//! The three-mode weight scalar.

use super::poly::QPolynomial;
use super::ratfn::QRationalFunction;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Relative tolerance used for float-mode equality.
const FLOAT_REL_TOL: f64 = 1e-9;

/// A formal exponent of `q`.
///
/// `Infinite` encodes the boundary convention that a q-power referencing an
/// undefined pattern entry is the zero weight (as `q^e -> 0` when `e -> inf`
/// for `|q| < 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QExp {
    Finite(u64),
    Infinite,
}

impl QExp {
    /// Difference of two optional pattern entries; any undefined entry makes
    /// the power vanish.
    pub fn gap(hi: Option<u64>, lo: Option<u64>) -> QExp {
        match (hi, lo) {
            (Some(h), Some(l)) => {
                debug_assert!(h >= l, "negative q-exponent gap: {h} - {l}");
                QExp::Finite(h - l)
            }
            _ => QExp::Infinite,
        }
    }

    pub fn succ(self) -> QExp {
        match self {
            QExp::Finite(e) => QExp::Finite(e + 1),
            QExp::Infinite => QExp::Infinite,
        }
    }

    pub fn is_zero(self) -> bool {
        self == QExp::Finite(0)
    }
}

/// Fixed computation mode shared by every scalar in one computation.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightMode {
    /// Reduced rational functions in `q` with integer coefficients.
    Symbolic,
    /// Exact rationals at a fixed rational q-point (never `1` or `-1`).
    ExactAtQ(BigRational),
    /// Double precision at a fixed real q-point.
    FloatAtQ(f64),
}

impl WeightMode {
    pub fn symbolic() -> Self {
        WeightMode::Symbolic
    }

    /// Exact mode; rejects `q = 1` and `q = -1` where `1 - q^m` may vanish.
    pub fn exact_at(q: BigRational) -> Result<Self> {
        if q == BigRational::one() || q == -BigRational::one() {
            return Err(Error::InvalidQPoint(format!(
                "exact mode rejects q = {q}"
            )));
        }
        Ok(WeightMode::ExactAtQ(q))
    }

    pub fn float_at(q: f64) -> Result<Self> {
        if !q.is_finite() || q == 1.0 || q == -1.0 {
            return Err(Error::InvalidQPoint(format!("float mode rejects q = {q}")));
        }
        Ok(WeightMode::FloatAtQ(q))
    }

    /// Float mode restricted to `0 <= q < 1`, as required for sampling.
    pub fn sampling_q(&self) -> Result<f64> {
        match self {
            WeightMode::FloatAtQ(q) if (0.0..1.0).contains(q) => Ok(*q),
            WeightMode::FloatAtQ(q) => Err(Error::InvalidQPoint(format!(
                "sampling requires 0 <= q < 1, got {q}"
            ))),
            _ => Err(Error::InvalidWeightMode(
                "sampling requires float mode".into(),
            )),
        }
    }

    pub fn zero(&self) -> WeightScalar {
        match self {
            WeightMode::Symbolic => WeightScalar::Symbolic(QRationalFunction::zero()),
            WeightMode::ExactAtQ(q) => WeightScalar::ExactAtQ {
                value: BigRational::zero(),
                q_point: q.clone(),
            },
            WeightMode::FloatAtQ(q) => WeightScalar::FloatAtQ {
                value: 0.0,
                q_point: *q,
            },
        }
    }

    pub fn one(&self) -> WeightScalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> WeightScalar {
        self.from_poly(&QPolynomial::constant(n))
    }

    pub fn from_poly(&self, p: &QPolynomial) -> WeightScalar {
        match self {
            WeightMode::Symbolic => {
                WeightScalar::Symbolic(QRationalFunction::from_poly(p.clone()))
            }
            WeightMode::ExactAtQ(q) => WeightScalar::ExactAtQ {
                value: p.eval_rational(q),
                q_point: q.clone(),
            },
            WeightMode::FloatAtQ(q) => WeightScalar::FloatAtQ {
                value: p.eval_f64(*q),
                q_point: *q,
            },
        }
    }

    /// Embeds an exact rational constant (e.g. a letter probability).
    pub fn from_rational(&self, r: &BigRational) -> WeightScalar {
        match self {
            WeightMode::Symbolic => {
                WeightScalar::Symbolic(QRationalFunction::from_rational(r))
            }
            WeightMode::ExactAtQ(q) => WeightScalar::ExactAtQ {
                value: r.clone(),
                q_point: q.clone(),
            },
            WeightMode::FloatAtQ(q) => WeightScalar::FloatAtQ {
                value: r.to_f64().unwrap_or(f64::NAN),
                q_point: *q,
            },
        }
    }

    /// `q^e`, with `q^Infinite = 0`.
    pub fn q_pow(&self, e: QExp) -> WeightScalar {
        match e {
            QExp::Infinite => self.zero(),
            QExp::Finite(e) => self.from_poly(&QPolynomial::q_power(e)),
        }
    }

    /// `1 - q^e`; equals one for `e = Infinite` and zero for `e = 0`.
    pub fn one_minus_q_pow(&self, e: QExp) -> WeightScalar {
        match e {
            QExp::Infinite => self.one(),
            QExp::Finite(e) => self.from_poly(&QPolynomial::one_minus_q_power(e)),
        }
    }

    /// The q-Pochhammer `(n)_q` in this mode.
    pub fn poch(&self, n: u64) -> WeightScalar {
        let mut acc = self.one();
        for i in 1..=n {
            acc = &acc * &self.one_minus_q_pow(QExp::Finite(i));
        }
        acc
    }
}

/// A weight in one of the three modes.
///
/// Binary operations require both operands to share the mode and q-point;
/// the operator impls panic on mismatch, the `try_*` methods report it.
#[derive(Debug, Clone)]
pub enum WeightScalar {
    Symbolic(QRationalFunction),
    ExactAtQ {
        value: BigRational,
        q_point: BigRational,
    },
    FloatAtQ {
        value: f64,
        q_point: f64,
    },
}

impl WeightScalar {
    pub fn mode(&self) -> WeightMode {
        match self {
            WeightScalar::Symbolic(_) => WeightMode::Symbolic,
            WeightScalar::ExactAtQ { q_point, .. } => WeightMode::ExactAtQ(q_point.clone()),
            WeightScalar::FloatAtQ { q_point, .. } => WeightMode::FloatAtQ(*q_point),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            WeightScalar::Symbolic(r) => r.is_zero(),
            WeightScalar::ExactAtQ { value, .. } => value.is_zero(),
            WeightScalar::FloatAtQ { value, .. } => *value == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            WeightScalar::Symbolic(r) => r.is_one(),
            WeightScalar::ExactAtQ { value, .. } => value.is_one(),
            WeightScalar::FloatAtQ { value, .. } => *value == 1.0,
        }
    }

    pub fn as_symbolic(&self) -> Option<&QRationalFunction> {
        match self {
            WeightScalar::Symbolic(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            WeightScalar::ExactAtQ { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Numeric value for reporting; symbolic scalars have no single value.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            WeightScalar::Symbolic(_) => None,
            WeightScalar::ExactAtQ { value, .. } => value.to_f64(),
            WeightScalar::FloatAtQ { value, .. } => Some(*value),
        }
    }

    pub fn pow(&self, exp: u64) -> WeightScalar {
        let mut acc = self.mode().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn mismatch(&self, rhs: &WeightScalar) -> Error {
        Error::ModeMismatch(format!("{:?} vs {:?}", self.mode(), rhs.mode()))
    }

    pub fn try_add(&self, rhs: &WeightScalar) -> Result<WeightScalar> {
        match (self, rhs) {
            (WeightScalar::Symbolic(a), WeightScalar::Symbolic(b)) => {
                Ok(WeightScalar::Symbolic(a + b))
            }
            (
                WeightScalar::ExactAtQ { value: a, q_point: p },
                WeightScalar::ExactAtQ { value: b, q_point: r },
            ) if p == r => Ok(WeightScalar::ExactAtQ {
                value: a + b,
                q_point: p.clone(),
            }),
            (
                WeightScalar::FloatAtQ { value: a, q_point: p },
                WeightScalar::FloatAtQ { value: b, q_point: r },
            ) if p == r => Ok(WeightScalar::FloatAtQ {
                value: a + b,
                q_point: *p,
            }),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn try_sub(&self, rhs: &WeightScalar) -> Result<WeightScalar> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &WeightScalar) -> Result<WeightScalar> {
        match (self, rhs) {
            (WeightScalar::Symbolic(a), WeightScalar::Symbolic(b)) => {
                Ok(WeightScalar::Symbolic(a * b))
            }
            (
                WeightScalar::ExactAtQ { value: a, q_point: p },
                WeightScalar::ExactAtQ { value: b, q_point: r },
            ) if p == r => Ok(WeightScalar::ExactAtQ {
                value: a * b,
                q_point: p.clone(),
            }),
            (
                WeightScalar::FloatAtQ { value: a, q_point: p },
                WeightScalar::FloatAtQ { value: b, q_point: r },
            ) if p == r => Ok(WeightScalar::FloatAtQ {
                value: a * b,
                q_point: *p,
            }),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn try_div(&self, rhs: &WeightScalar) -> Result<WeightScalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, rhs) {
            (WeightScalar::Symbolic(a), WeightScalar::Symbolic(b)) => {
                Ok(WeightScalar::Symbolic(a / b))
            }
            (
                WeightScalar::ExactAtQ { value: a, q_point: p },
                WeightScalar::ExactAtQ { value: b, q_point: r },
            ) if p == r => Ok(WeightScalar::ExactAtQ {
                value: a / b,
                q_point: p.clone(),
            }),
            (
                WeightScalar::FloatAtQ { value: a, q_point: p },
                WeightScalar::FloatAtQ { value: b, q_point: r },
            ) if p == r => Ok(WeightScalar::FloatAtQ {
                value: a / b,
                q_point: *p,
            }),
            _ => Err(self.mismatch(rhs)),
        }
    }
}

impl PartialEq for WeightScalar {
    /// Exact structural equality in symbolic and exact modes; relative
    /// tolerance `1e-9` in float mode.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (WeightScalar::Symbolic(a), WeightScalar::Symbolic(b)) => a == b,
            (
                WeightScalar::ExactAtQ { value: a, q_point: p },
                WeightScalar::ExactAtQ { value: b, q_point: r },
            ) => p == r && a == b,
            (
                WeightScalar::FloatAtQ { value: a, q_point: p },
                WeightScalar::FloatAtQ { value: b, q_point: r },
            ) => {
                p == r && {
                    let scale = a.abs().max(b.abs());
                    (a - b).abs() <= FLOAT_REL_TOL * scale.max(1e-3)
                }
            }
            _ => false,
        }
    }
}

macro_rules! scalar_op {
    ($trait:ident, $method:ident, $try:ident, $what:literal) => {
        impl $trait for &WeightScalar {
            type Output = WeightScalar;
            fn $method(self, rhs: &WeightScalar) -> WeightScalar {
                self.$try(rhs)
                    .unwrap_or_else(|e| panic!(concat!("scalar ", $what, ": {}"), e))
            }
        }
    };
}

scalar_op!(Add, add, try_add, "addition");
scalar_op!(Sub, sub, try_sub, "subtraction");
scalar_op!(Mul, mul, try_mul, "multiplication");
scalar_op!(Div, div, try_div, "division");

impl Neg for &WeightScalar {
    type Output = WeightScalar;
    fn neg(self) -> WeightScalar {
        match self {
            WeightScalar::Symbolic(r) => WeightScalar::Symbolic(-r),
            WeightScalar::ExactAtQ { value, q_point } => WeightScalar::ExactAtQ {
                value: -value,
                q_point: q_point.clone(),
            },
            WeightScalar::FloatAtQ { value, q_point } => WeightScalar::FloatAtQ {
                value: -value,
                q_point: *q_point,
            },
        }
    }
}

impl fmt::Display for WeightScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightScalar::Symbolic(r) => write!(f, "{r}"),
            WeightScalar::ExactAtQ { value, .. } => write!(f, "{value}"),
            WeightScalar::FloatAtQ { value, .. } => write!(f, "{value}"),
        }
    }
}
