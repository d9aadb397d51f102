//! Exact 64-bit rationals with checked overflow.
//!
//! Every operation that can overflow returns [`Error::Overflow`] instead of
//! wrapping or panicking.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        if numer == i64::MIN || denom == i64::MIN {
            return Err(Error::Overflow);
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.0.checked_add(&rhs.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.0.checked_sub(&rhs.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.0.checked_mul(&rhs.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.0.checked_div(&rhs.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn recip(self) -> Result<Self> {
        Rational::ONE.checked_div(self)
    }

    /// Smallest integer `>= self`.
    pub fn ceil(self) -> i64 {
        self.0.ceil().to_integer()
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    /// Representative of `self` in `[0, 1)`.
    pub fn fract_mod_one(self) -> Self {
        Rational(self.0 - self.0.floor())
    }

    /// Lossy conversion used only for human-readable display.
    pub fn approx_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b` or a bare integer `a`, with surrounding whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let s_trim = s.trim();
        match s_trim.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Rational::new(n, d)
            }
            None => s_trim.parse::<i64>().map(Rational::integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.numer() == *other
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&Ratio::from_integer(*other)))
    }
}
