//! Arbitrary-precision rational arithmetic and the real quadratic field Q(√d).
//!
//! All trusted computation in this crate runs over [`Rational`] or
//! [`QuadExt`]; floating point never enters a verification path.  The two
//! types share the [`Field`] abstraction so matrices and geometry can be
//! written once.
//!
//! Values are written in a compact textual entry grammar used by every file
//! format and CLI surface of the project: `INT`, `INT/UINT`, or `R1+R2s` /
//! `R1-R2s` where `R1`, `R2` are rationals and `s` denotes √2.  Examples:
//! `5/44`, `3/4+1/8s`, `-1/11+1/11s`.  Entries contain no whitespace.

mod quadext;
mod rational;

pub use quadext::{quad, Quad, QuadExt};
pub use rational::{rat, Rational};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

/// Exact sign of a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn product(self, other: Sign) -> Sign {
        match (self.as_i8() * other.as_i8()).cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        !matches!(self, Sign::Negative)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExactNumError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseEntryError {
    #[error("empty entry")]
    Empty,
    #[error("invalid integer in entry `{0}`")]
    BadInteger(String),
    #[error("denominator must be a positive integer in entry `{0}`")]
    BadDenominator(String),
    #[error("malformed quadratic entry `{0}` (expected `R1+R2s` or `R1-R2s`)")]
    BadQuadratic(String),
    #[error("invalid decimal literal `{0}`")]
    BadDecimal(String),
}

/// An exactly computable ordered field.
///
/// Implemented by [`Rational`] and by [`Quad`] (= `QuadExt<2>`).  The bound
/// set is what the exact kernels need: ring operators, exact division with a
/// detectable zero divisor, exact sign, and the textual entry grammar.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = ParseEntryError>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn checked_div(&self, rhs: &Self) -> Result<Self, ExactNumError>;

    fn sign(&self) -> Sign;

    /// Double-precision shadow of the exact value, for display only.
    fn approx(&self) -> f64;

    fn from_rational(r: Rational) -> Self;

    fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_products() {
        assert_eq!(Sign::Negative.product(Sign::Negative), Sign::Positive);
        assert_eq!(Sign::Negative.product(Sign::Positive), Sign::Negative);
        assert_eq!(Sign::Zero.product(Sign::Positive), Sign::Zero);
    }
}
