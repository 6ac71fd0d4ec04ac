//! Exact arithmetic over the indeterminate `q`.
//!
//! [`QPolynomial`] is a dense integer-coefficient polynomial, [`QRationalFunction`]
//! a reduced quotient of two of them in a unique canonical form, and
//! [`WeightScalar`] / [`WeightMode`] the three-mode carrier (symbolic, exact at a
//! rational q-point, float at a real q-point) that every weight formula in the
//! crate is written against. All values are immutable once built and the
//! operations are pure.

mod parse;
mod poly;
mod ratfn;
mod scalar;

pub use poly::{qbinomial, qpochhammer, QPolynomial};
pub use ratfn::QRationalFunction;
pub use scalar::{QExp, WeightMode, WeightScalar};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
