//! Half-integers: central charges and conformal weights.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::Error;

/// A value in ½ℤ, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        Self(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        Self(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// `⌊self / d⌋` for a positive integer `d`.
    pub fn floor_div(self, d: i64) -> i64 {
        self.0.div_euclid(2 * d)
    }

    /// Position on the 1/48 tick grid of `q^{self}`.
    pub fn ticks(self) -> i64 {
        24 * self.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(self.0.into(), 2.into())
    }

    pub fn add_half(self, halves: i64) -> Self {
        Self(self.0 + halves)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Accepts `23.5`, `47/2`, `24`, `-1/2`.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("'{s}' is not a half-integer"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            return match d {
                1 => Ok(Self(2 * n)),
                2 => Ok(Self(n)),
                -1 => Ok(Self(-2 * n)),
                -2 => Ok(Self(-n)),
                _ if d != 0 && (2 * n) % d == 0 => Ok(Self(2 * n / d)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.starts_with('-');
            let whole: i64 = if int == "-" || int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let twice = 2 * whole.abs() + half;
            return Ok(Self(if neg { -twice } else { twice }));
        }
        let n: i64 = s.parse().map_err(|_| bad())?;
        Ok(Self(2 * n))
    }
}
