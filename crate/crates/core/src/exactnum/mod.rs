//! Exact arithmetic: rationals, dense univariate polynomials, reduced rational
//! functions, truncated Laurent series and the radix substitution / sectioning
//! operators acting on them.

mod laurent;
mod linalg;
mod matrix;
mod poly;
mod ratfunc;
mod section;

pub use laurent::{laurent_expand, LaurentTrunc};
pub use linalg::nullspace;
pub use matrix::RatMatrix;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use section::section_ratfunc;

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational scalar. Always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("series has no known nonzero coefficient up to order {order}")]
    NotInvertible { order: i64 },
}
