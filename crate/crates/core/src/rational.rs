//! Exact rational numbers.
//!
//! A thin newtype over `Ratio<i128>` that is always kept in lowest terms with a
//! positive denominator. Every operation is checked: an overflow panics instead
//! of silently wrapping, so a result is either exact or absent.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use thiserror::Error;

/// Maximum number of fractional digits accepted in decimal notation.
pub const MAX_DECIMAL_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` has more than {MAX_DECIMAL_DIGITS} fractional digits")]
    TooManyDigits(String),
    #[error("`{0}` does not fit in 128-bit arithmetic")]
    Overflow(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer/denom` in lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: i128) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        self.0.checked_add(&other.0).map(Rational)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.checked_sub(&other.0).map(Rational)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        self.0.checked_mul(&other.0).map(Rational)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        self.0.checked_div(&other.0).map(Rational)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Multiplies by an integer count.
    pub fn times(self, k: usize) -> Self {
        self * Rational::from_integer(k as i128)
    }
}

impl fmt::Display for Rational {
    /// Always `p/q`, including integers (`3/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts integers, `p/q`, and decimals with at most nine fractional digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let invalid = || ParseRationalError::Invalid(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_int(p.trim()).ok_or_else(invalid)?;
            let q = parse_int(q.trim()).ok_or_else(invalid)?;
            if q == 0 {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational::new(p, q));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.len() > MAX_DECIMAL_DIGITS {
                return Err(ParseRationalError::TooManyDigits(s.to_string()));
            }
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            let (negative, digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            if !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            let whole: i128 = if digits.is_empty() {
                0
            } else {
                digits
                    .parse()
                    .map_err(|_| ParseRationalError::Overflow(s.to_string()))?
            };
            let frac: i128 = frac_part.parse().map_err(|_| invalid())?;
            let scale = 10i128.pow(frac_part.len() as u32);
            let magnitude = whole
                .checked_mul(scale)
                .and_then(|w| w.checked_add(frac))
                .ok_or_else(|| ParseRationalError::Overflow(s.to_string()))?;
            let numer = if negative { -magnitude } else { magnitude };
            return Ok(Rational::new(numer, scale));
        }
        parse_int(s).map(Rational::from_integer).ok_or_else(invalid)
    }
}

fn parse_int(s: &str) -> Option<i128> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("rational overflow in addition")
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs)
            .expect("rational overflow in subtraction")
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs)
            .expect("rational overflow in multiplication")
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        self.checked_div(&rhs).expect("rational overflow in division")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.copied().sum()
    }
}

impl From<i128> for Rational {
    fn from(value: i128) -> Self {
        Rational::from_integer(value)
    }
}

/// Least common multiple of the denominators, or `None` on overflow.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<i128> {
    values.into_iter().try_fold(1i128, |acc, r| {
        let d = r.denom();
        let g = acc.gcd(&d);
        (acc / g).checked_mul(d)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_all_notations() {
        assert_eq!(r("3/2"), Rational::new(3, 2));
        assert_eq!(r("6/4"), Rational::new(3, 2));
        assert_eq!(r("1.5"), Rational::new(3, 2));
        assert_eq!(r("-0.25"), Rational::new(-1, 4));
        assert_eq!(r(".5"), Rational::new(1, 2));
        assert_eq!(r("7"), Rational::from_integer(7));
        assert_eq!(r("0.000000001"), Rational::new(1, 1_000_000_000));
        assert_eq!(r(" 2 / -4 "), Rational::new(-1, 2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(
            "1.0000000001".parse::<Rational>(),
            Err(ParseRationalError::TooManyDigits(_))
        ));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        for bad in ["", "abc", "1/", "1.", "1e3", "--1", "1.2.3", "0x10"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn display_is_always_a_fraction() {
        assert_eq!(Rational::from_integer(3).to_string(), "3/1");
        assert_eq!(Rational::new(-6, 4).to_string(), "-3/2");
        assert_eq!(Rational::ZERO.to_string(), "0/1");
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Rational::new(1, 3);
        assert_eq!(third + third + third, Rational::ONE);
        assert_eq!(Rational::new(3, 2) * Rational::new(2, 3), Rational::ONE);
        assert_eq!(Rational::new(6, 5) / Rational::new(3, 5), Rational::from_integer(2));
        assert_eq!(Rational::new(1, 2).times(4), Rational::from_integer(2));
    }

    #[test]
    fn common_denominator_is_lcm() {
        let values = [Rational::new(1, 4), Rational::new(5, 6), Rational::from_integer(2)];
        assert_eq!(common_denominator(&values), Some(12));
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        let big = Rational::from_integer(i128::MAX);
        let _ = big + big;
    }
}
