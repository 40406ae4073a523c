//! The real quadratic field Q(√D) for a square-free radicand D.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::{ExactNumError, Field, ParseEntryError, Sign};

const fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= d {
        if d % (f * f) == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// An element `a + b·√D` of the real quadratic field Q(√D).
///
/// The radicand is a type parameter, so elements of distinct fields cannot be
/// mixed; the compile-time assertion below rejects radicands that are not
/// square-free (for those, √D is rational or belongs to a smaller field and
/// the representation would stop being unique).
///
/// Since √D is irrational, the representation is unique and equality is
/// componentwise.  Comparisons are exact: no floating point is involved.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt<const D: u64 = 2> {
    a: Rational,
    b: Rational,
}

/// The field Q(√2), home of every irrational constant in this crate.
pub type Quad = QuadExt<2>;

impl<const D: u64> QuadExt<D> {
    const RADICAND_OK: () = assert!(
        is_square_free(D),
        "radicand must be a square-free integer >= 2"
    );

    pub fn new(a: Rational, b: Rational) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::RADICAND_OK;
        QuadExt { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self::new(a, Rational::zero())
    }

    /// The pure term `b·√D`.
    pub fn sqrt_term(b: Rational) -> Self {
        Self::new(Rational::zero(), b)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand() -> u64 {
        D
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// The field norm `a² − D·b²`; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        self.a.clone() * self.a.clone()
            - Rational::from_int(D as i64) * self.b.clone() * self.b.clone()
    }

    /// Exact sign of the real number `a + b√D`.
    ///
    /// Case analysis on the component signs; in the mixed-sign case the
    /// comparison of `a²` against `D·b²` decides (equality is impossible for
    /// square-free D with b ≠ 0, since √D is irrational).
    pub fn sign(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        match (sa, sb) {
            (_, Sign::Zero) => sa,
            (Sign::Zero, _) => sb,
            _ if sa == sb => sa,
            _ => {
                let a2 = self.a.clone() * self.a.clone();
                let db2 =
                    Rational::from_int(D as i64) * self.b.clone() * self.b.clone();
                match a2.cmp(&db2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => {
                        unreachable!("a² = D·b² with b ≠ 0 contradicts √D irrational")
                    }
                }
            }
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactNumError> {
        if rhs.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        let norm = rhs.norm();
        let conj = rhs.conjugate();
        let num = self.clone() * conj;
        Ok(Self::new(
            num.a.checked_div(&norm)?,
            num.b.checked_div(&norm)?,
        ))
    }

    pub fn approx(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (D as f64).sqrt()
    }
}

impl<const D: u64> Add for QuadExt<D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<const D: u64> Sub for QuadExt<D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<const D: u64> Mul for QuadExt<D> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = Rational::from_int(D as i64);
        Self::new(
            self.a.clone() * rhs.a.clone() + d * self.b.clone() * rhs.b.clone(),
            self.a * rhs.b + rhs.a * self.b,
        )
    }
}

impl<const D: u64> Div for QuadExt<D> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("quadratic division by zero")
    }
}

impl<const D: u64> Neg for QuadExt<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<const D: u64> Zero for QuadExt<D> {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: u64> One for QuadExt<D> {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl<const D: u64> From<Rational> for QuadExt<D> {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<const D: u64> PartialOrd for QuadExt<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const D: u64> Ord for QuadExt<D> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.clone() - other.clone()).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl<const D: u64> fmt::Debug for QuadExt<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}·√{}", self.a, self.b, D)
        }
    }
}

// The textual entry grammar spells √2 as `s`, so rendering and parsing are
// only defined over Q(√2).

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sep = if self.b.sign() == Sign::Negative { '-' } else { '+' };
        write!(f, "{}{}{}s", self.a, sep, self.b.abs())
    }
}

impl FromStr for Quad {
    type Err = ParseEntryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseEntryError::Empty);
        }
        let Some(body) = s.strip_suffix('s') else {
            return Ok(Quad::from_rational(s.parse()?));
        };
        // Split `R1±R2` at the sign that follows the R1 digits; the leading
        // character may itself be a sign and is skipped.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit() {
                split = Some(i);
                break;
            }
        }
        let Some(i) = split else {
            return Err(ParseEntryError::BadQuadratic(s.to_string()));
        };
        let a: Rational = body[..i].parse()?;
        let coeff = &body[i + 1..];
        if coeff.is_empty() || coeff.starts_with(['+', '-']) {
            return Err(ParseEntryError::BadQuadratic(s.to_string()));
        }
        let b: Rational = coeff.parse()?;
        let b = if bytes[i] == b'-' { -b } else { b };
        Ok(Quad::new(a, b))
    }
}

impl Field for Quad {
    fn checked_div(&self, rhs: &Self) -> Result<Self, ExactNumError> {
        QuadExt::checked_div(self, rhs)
    }

    fn sign(&self) -> Sign {
        QuadExt::sign(self)
    }

    fn approx(&self) -> f64 {
        QuadExt::approx(self)
    }

    fn from_rational(r: Rational) -> Self {
        Quad::from_rational(r)
    }
}

/// Shorthand used pervasively by the constant tables and tests.
pub fn quad(s: &str) -> Quad {
    s.parse().unwrap_or_else(|e| panic!("bad quadratic literal `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn sqrt2() -> Quad {
        Quad::sqrt_term(Rational::one())
    }

    #[test]
    fn conjugate_product_is_norm() {
        // (1+√2)(1−√2) = −1
        let x = Quad::new(rat("1"), rat("1"));
        let y = Quad::new(rat("1"), rat("-1"));
        assert_eq!(x.clone() * y, Quad::from_rational(rat("-1")));
        assert_eq!(x.norm(), rat("-1"));
    }

    #[test]
    fn irrational_part_cancellation() {
        // (2−√2) + √2 = 2
        let x = Quad::new(rat("2"), rat("-1"));
        assert_eq!(x + sqrt2(), Quad::from_rational(rat("2")));
    }

    #[test]
    fn conjugate_division() {
        // (1−√2)/(5−4√2) = (3+√2)/7, the eliminated value at u = 2−√2
        let num = Quad::new(rat("1"), rat("-1"));
        let den = Quad::new(rat("5"), rat("-4"));
        assert_eq!(num / den, Quad::new(rat("3/7"), rat("1/7")));
    }

    #[test]
    fn division_by_zero_detected() {
        let x = Quad::new(rat("1"), rat("1"));
        assert_eq!(
            x.checked_div(&Quad::zero()),
            Err(ExactNumError::DivisionByZero)
        );
    }

    #[test]
    fn sign_cases() {
        // 2 − √2 > 0 because 4 > 2
        assert_eq!(Quad::new(rat("2"), rat("-1")).sign(), Sign::Positive);
        // 1 − √2 < 0 because 1 < 2
        assert_eq!(Quad::new(rat("1"), rat("-1")).sign(), Sign::Negative);
        // (−1+√2)/11 > 0: the W entry that must be nonnegative
        assert_eq!(Quad::new(rat("-1/11"), rat("1/11")).sign(), Sign::Positive);
        assert_eq!(Quad::zero().sign(), Sign::Zero);
        assert_eq!(Quad::new(rat("0"), rat("-2/7")).sign(), Sign::Negative);
    }

    #[test]
    fn sign_generic_radicand() {
        // 7 − 4√3 > 0 because 49 > 48; 2 − √5 < 0 because 4 < 5.
        let x: QuadExt<3> = QuadExt::new(rat("7"), rat("-4"));
        assert_eq!(x.sign(), Sign::Positive);
        let y: QuadExt<5> = QuadExt::new(rat("2"), rat("-1"));
        assert_eq!(y.sign(), Sign::Negative);
    }

    #[test]
    fn ordering_via_sign() {
        let lo = Quad::new(rat("0"), rat("1"));  // √2 ≈ 1.414
        let hi = Quad::new(rat("3/2"), rat("0"));
        assert!(lo < hi);
        assert!(hi > lo);
    }

    #[test]
    fn grammar_round_trip() {
        for s in ["2-1s", "3/4+1/8s", "-1/11+1/11s", "0+1/11s", "5/44", "-7"] {
            let v = quad(s);
            assert_eq!(v.to_string(), s, "round trip of `{s}`");
        }
        assert!("s".parse::<Quad>().is_err());
        assert!("1+s".parse::<Quad>().is_err());
        assert!("1+-2s".parse::<Quad>().is_err());
        assert!("".parse::<Quad>().is_err());
    }
}
