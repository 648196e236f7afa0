//! Exact rational coordinates.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// An exact fraction kept in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));

    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        *self - Rational::from_integer(self.floor())
    }

    /// Reduces the value into `[0, modulus)`.
    pub fn rem_euclid(&self, modulus: u64) -> Rational {
        let m = modulus as i64;
        let wrapped = Integer::div_floor(&self.floor(), &m) * m;
        *self - Rational::from_integer(wrapped)
    }

    /// The integer `self - other` when it is one.
    pub fn integer_difference(&self, other: &Rational) -> Option<i64> {
        let d = *self - *other;
        d.is_integer().then(|| d.numer())
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    /// Always `p/q`, including integers (`0/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("expected a fraction `p/q`, got `{0}`")]
    MissingDenominator(String),
    #[error("invalid integer in `{0}`")]
    InvalidInteger(String),
    #[error("denominator must be at least 1 in `{0}`")]
    NonPositiveDenominator(String),
    #[error("fraction `{0}` is not in lowest terms")]
    NotReduced(String),
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts exactly `p/q` with `q >= 1` and `gcd(p, q) = 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| ParseRationalError::MissingDenominator(s.to_string()))?;
        let p: i64 = p
            .parse()
            .map_err(|_| ParseRationalError::InvalidInteger(s.to_string()))?;
        if q.starts_with('+') || q.starts_with('-') {
            return Err(ParseRationalError::NonPositiveDenominator(s.to_string()));
        }
        let q: i64 = q
            .parse()
            .map_err(|_| ParseRationalError::InvalidInteger(s.to_string()))?;
        if q < 1 {
            return Err(ParseRationalError::NonPositiveDenominator(s.to_string()));
        }
        if !p.gcd(&q).is_one() {
            return Err(ParseRationalError::NotReduced(s.to_string()));
        }
        Ok(Rational::new(p, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lowest_terms_and_sign() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(1, -2).denom(), 2);
        assert_eq!(r(1, -2).numer(), -1);
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(r(-1, 2).floor(), -1);
        assert_eq!(r(-1, 2).fract(), r(1, 2));
        assert_eq!(r(7, 3).floor(), 2);
        assert_eq!(r(7, 3).fract(), r(1, 3));
        assert_eq!(r(3, 1).fract(), Rational::ZERO);
    }

    #[test]
    fn rem_euclid_wraps_into_period() {
        assert_eq!(r(-1, 2).rem_euclid(1), r(1, 2));
        assert_eq!(r(-1, 1).rem_euclid(2), r(1, 1));
        assert_eq!(r(5, 2).rem_euclid(2), r(1, 2));
        assert_eq!(r(3, 2).rem_euclid(2), r(3, 2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("0/1".parse::<Rational>().unwrap(), Rational::ZERO);
        assert_eq!("-3/2".parse::<Rational>().unwrap(), r(-3, 2));
        assert_eq!(r(1, 2).to_string(), "1/2");
        assert_eq!(Rational::from_integer(4).to_string(), "4/1");
        assert!(matches!(
            "0".parse::<Rational>(),
            Err(ParseRationalError::MissingDenominator(_))
        ));
        assert!(matches!(
            "2/4".parse::<Rational>(),
            Err(ParseRationalError::NotReduced(_))
        ));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::NonPositiveDenominator(_))
        ));
        assert!(matches!(
            "1/-2".parse::<Rational>(),
            Err(ParseRationalError::NonPositiveDenominator(_))
        ));
        assert!("a/2".parse::<Rational>().is_err());
    }

    #[test]
    fn integer_difference() {
        assert_eq!(r(3, 2).integer_difference(&r(1, 2)), Some(1));
        assert_eq!(r(0, 1).integer_difference(&r(1, 2)), None);
    }
}
