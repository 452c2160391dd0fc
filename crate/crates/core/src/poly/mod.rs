//! Exact sparse polynomial arithmetic.
//!
//! Everything lives in a fixed nine-variable ring over `(X1, X2, X3, M1, M2,
//! M3, a1, a2, a3)` with rational coefficients, plus a small two-variable
//! ring in abstract `U`, `V` used for the potential family.

mod monomial;
mod polynomial;
mod uv;

pub use monomial::{levi_civita, Axis, Monomial, Var, NVARS};
pub use polynomial::{Polynomial, TermRecord};
pub use uv::UvPolynomial;

use num_bigint::BigInt;

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("not an integer: {0:?}")]
    Integer(String),
    #[error("zero denominator")]
    ZeroDenominator,
}
