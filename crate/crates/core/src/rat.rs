//! Exact rational scalar used throughout the crate.
//!
//! Every quantity with a fractional part (slopes, charge components, bound
//! values, wall positions) is a [`Rat`]: a reduced fraction over `i128`.
//! Floating point never enters any computation; callers that want decimal
//! output must opt in explicitly via [`Rat::to_f64`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Reduced rational number with exact arithmetic.
///
/// Wraps `Ratio<i128>` so that display, parsing and serialization follow a
/// single canonical form: `p/q` with `q > 0` and `gcd(p, q) = 1`, shortened
/// to `p` when `q = 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(Ratio<i128>);

impl Rat {
    /// `p / q`. Panics if `q == 0`; fractions are reduced on construction.
    pub fn new(p: i128, q: i128) -> Self {
        Rat(Ratio::new(p, q))
    }

    pub fn int(n: i128) -> Self {
        Rat(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Rat(Ratio::zero())
    }

    pub fn one() -> Self {
        Rat(Ratio::from_integer(1))
    }

    pub fn numer(self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(self) -> Self {
        Rat(self.0.abs())
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// Largest integer `<= self`.
    pub fn floor_int(self) -> i128 {
        self.0.floor().to_integer()
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(self) -> i128 {
        self.0.ceil().to_integer()
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

    /// Lossy decimal approximation; only for optional display columns.
    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n as i128)
    }
}

impl From<i128> for Rat {
    fn from(n: i128) -> Self {
        Rat::int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    /// Exact division. Panics on division by zero.
    fn div(self, rhs: Rat) -> Rat {
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: &'static str,
}

impl ParseRatError {
    fn new(input: &str, reason: &'static str) -> Self {
        ParseRatError {
            input: input.to_owned(),
            reason,
        }
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p`, `p/q` and exact decimal literals (`1.9` -> `19/10`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ParseRatError::new(s, "empty"));
        }
        if let Some((num, den)) = t.split_once('/') {
            let p: i128 = num
                .trim()
                .parse()
                .map_err(|_| ParseRatError::new(s, "numerator is not an integer"))?;
            let q: i128 = den
                .trim()
                .parse()
                .map_err(|_| ParseRatError::new(s, "denominator is not an integer"))?;
            if q == 0 {
                return Err(ParseRatError::new(s, "denominator is zero"));
            }
            return Ok(Rat::new(p, q));
        }
        if let Some((whole, frac)) = t.split_once('.') {
            let (sign, whole_digits) = match whole.strip_prefix('-') {
                Some(rest) => (-1i128, rest),
                None => (1i128, whole.strip_prefix('+').unwrap_or(whole)),
            };
            if !whole_digits.chars().all(|c| c.is_ascii_digit())
                || !frac.chars().all(|c| c.is_ascii_digit())
                || (whole_digits.is_empty() && frac.is_empty())
            {
                return Err(ParseRatError::new(s, "malformed decimal"));
            }
            let int_part: i128 = if whole_digits.is_empty() {
                0
            } else {
                whole_digits
                    .parse()
                    .map_err(|_| ParseRatError::new(s, "integer part out of range"))?
            };
            let mut value = Rat::int(int_part);
            if !frac.is_empty() {
                let digits: i128 = frac
                    .parse()
                    .map_err(|_| ParseRatError::new(s, "fractional part out of range"))?;
                let scale = 10i128
                    .checked_pow(frac.len() as u32)
                    .ok_or_else(|| ParseRatError::new(s, "fractional part too long"))?;
                value = value + Rat::new(digits, scale);
            }
            return Ok(value * Rat::int(sign));
        }
        let p: i128 = t
            .parse()
            .map_err(|_| ParseRatError::new(s, "not an integer"))?;
        Ok(Rat::int(p))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_display() {
        assert_eq!(Rat::new(4, 2).to_string(), "2");
        assert_eq!(Rat::new(1, -2).to_string(), "-1/2");
        assert_eq!(Rat::new(-19, -10).to_string(), "19/10");
        assert_eq!(Rat::zero().to_string(), "0");
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!("19/10".parse::<Rat>().unwrap(), Rat::new(19, 10));
        assert_eq!("-3".parse::<Rat>().unwrap(), Rat::int(-3));
        assert_eq!("1.9".parse::<Rat>().unwrap(), Rat::new(19, 10));
        assert_eq!("-0.25".parse::<Rat>().unwrap(), Rat::new(-1, 4));
        assert_eq!("2.".parse::<Rat>().unwrap(), Rat::int(2));
        assert_eq!(".5".parse::<Rat>().unwrap(), Rat::new(1, 2));
        assert_eq!(" 7 / 2 ".parse::<Rat>().unwrap(), Rat::new(7, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!("".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a.b".parse::<Rat>().is_err());
        assert!("1.2.3".parse::<Rat>().is_err());
        assert!(".".parse::<Rat>().is_err());
    }

    #[test]
    fn floor_and_ceil_follow_sign() {
        assert_eq!(Rat::new(-19, 10).floor_int(), -2);
        assert_eq!(Rat::new(-19, 10).ceil_int(), -1);
        assert_eq!(Rat::new(19, 10).floor_int(), 1);
        assert_eq!(Rat::new(19, 10).ceil_int(), 2);
    }

    #[test]
    fn serde_round_trip_uses_strings() {
        let x = Rat::new(-7, 3);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"-7/3\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
