//! Arbitrary-precision rationals in canonical reduced form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactNumError, Field, ParseEntryError, Sign};

/// An exact rational number.
///
/// Canonical form is maintained on every construction: the fraction is
/// reduced, the denominator is positive, and zero is `0/1`.  Equality and
/// hashing are therefore structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`.  Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "rational denominator must be nonzero");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self, ExactNumError> {
        if denom.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ExactNumError> {
        if self.0.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses a decimal or scientific literal (`0.015`, `1e-6`, `-2.5e3`)
    /// into an exact rational.
    pub fn from_decimal_str(s: &str) -> Result<Self, ParseEntryError> {
        let bad = || ParseEntryError::BadDecimal(s.to_string());
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        if frac_part.contains(['+', '-']) {
            return Err(bad());
        }
        let scale = frac_part.len() as i32 - exp;
        let ten = BigInt::from(10);
        let pow = ten.pow(scale.unsigned_abs());
        let value = if scale >= 0 {
            BigRational::new(numer, pow)
        } else {
            BigRational::from_integer(numer * pow)
        };
        Ok(Rational(value))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = ParseEntryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseEntryError::Empty);
        }
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s)
                    .map_err(|_| ParseEntryError::BadInteger(s.to_string()))?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((num, den)) => {
                let n = BigInt::from_str(num)
                    .map_err(|_| ParseEntryError::BadInteger(s.to_string()))?;
                if den.is_empty() || den.starts_with(['+', '-']) {
                    return Err(ParseEntryError::BadDenominator(s.to_string()));
                }
                let d = BigInt::from_str(den)
                    .map_err(|_| ParseEntryError::BadDenominator(s.to_string()))?;
                if d.is_zero() {
                    return Err(ParseEntryError::BadDenominator(s.to_string()));
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.0.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl Field for Rational {
    fn checked_div(&self, rhs: &Self) -> Result<Self, ExactNumError> {
        if rhs.0.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        Ok(Rational(self.0.clone() / rhs.0.clone()))
    }

    fn sign(&self) -> Sign {
        match self.0.numer().cmp(&BigInt::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    fn approx(&self) -> f64 {
        self.to_f64()
    }

    fn from_rational(r: Rational) -> Self {
        r
    }
}

/// Shorthand used pervasively by the constant tables and tests.
pub fn rat(s: &str) -> Rational {
    s.parse().unwrap_or_else(|e| panic!("bad rational literal `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_canonical() {
        assert_eq!(rat("1/3") + rat("1/6"), rat("1/2"));
        assert_eq!(rat("5/44") * rat("44/5"), rat("1"));
        let z = rat("2/11") - rat("2/11");
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn division_guard() {
        assert_eq!(
            rat("1").checked_div(&rat("0")),
            Err(ExactNumError::DivisionByZero)
        );
        assert_eq!(rat("-3/4").checked_div(&rat("3/2")), Ok(rat("-1/2")));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "-7", "5/44", "-1/11", "85/121"] {
            assert_eq!(rat(s).to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        // Non-canonical input is reduced on construction.
        assert_eq!(rat("2/4").to_string(), "1/2");
    }

    #[test]
    fn decimal_literals() {
        assert_eq!(Rational::from_decimal_str("1e-6").unwrap(), rat("1/1000000"));
        assert_eq!(Rational::from_decimal_str("0.015").unwrap(), rat("3/200"));
        assert_eq!(Rational::from_decimal_str("-2.5e3").unwrap(), rat("-2500"));
        assert_eq!(Rational::from_decimal_str("25").unwrap(), rat("25"));
        assert!(Rational::from_decimal_str("1.2.3").is_err());
    }

    #[test]
    fn ordering_matches_sign() {
        assert!(rat("-1/11") < rat("0"));
        assert_eq!(rat("-5").sign(), Sign::Negative);
        assert_eq!(rat("0").sign(), Sign::Zero);
        assert_eq!(rat("1/40560").sign(), Sign::Positive);
    }
}
