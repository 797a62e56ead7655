//! Exact elements of the real quadratic field ℚ(√2).
//!
//! A [`Scalar`] is stored as a pair of arbitrary-precision rationals
//! `rat + sqrt2·√2`. Characters of the theory are plain rationals; the √2
//! component only appears in intermediate shadow computations and in the
//! twisted fermion character.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rat: BigRational,
    sqrt2: BigRational,
}

impl Scalar {
    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        Self { rat, sqrt2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self {
            rat: BigRational::from_integer(n),
            sqrt2: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self {
            rat: r,
            sqrt2: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// The element √2.
    pub fn sqrt2() -> Self {
        Self {
            rat: BigRational::zero(),
            sqrt2: BigRational::one(),
        }
    }

    /// `(√2)^n` for any integer `n`.
    pub fn sqrt2_pow(n: i64) -> Self {
        let half = n.div_euclid(2);
        let two_pow = if half >= 0 {
            BigRational::from_integer(BigInt::one() << half as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-half) as usize)
        };
        if n.rem_euclid(2) == 0 {
            Self::from_rational(two_pow)
        } else {
            Self::new(BigRational::zero(), two_pow)
        }
    }

    pub fn rat(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn is_plain(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// The rational value, or an error if the √2 part is nonzero.
    pub fn as_rational(&self) -> Result<&BigRational, Error> {
        if self.is_plain() {
            Ok(&self.rat)
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn is_integer(&self) -> Result<bool, Error> {
        Ok(self.as_rational()?.is_integer())
    }

    pub fn is_nonnegative(&self) -> Result<bool, Error> {
        Ok(!self.as_rational()?.is_negative())
    }

    /// Norm `rat² − 2·sqrt2²` down to ℚ.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(2.into()) * &self.sqrt2 * &self.sqrt2
    }

    /// Sign under the real embedding with √2 > 0.
    pub fn signum(&self) -> Ordering {
        let a = &self.rat;
        let b = &self.sqrt2;
        match (a.is_negative(), b.is_negative()) {
            _ if b.is_zero() => a.cmp(&BigRational::zero()),
            _ if a.is_zero() => b.cmp(&BigRational::zero()),
            (false, false) => Ordering::Greater,
            (true, true) => Ordering::Less,
            (false, true) => {
                // a > 0 > b: sign of a² − 2b²
                self.norm().cmp(&BigRational::zero())
            }
            (true, false) => BigRational::zero().cmp(&self.norm()),
        }
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(Self {
            rat: &self.rat / &n,
            sqrt2: -&self.sqrt2 / &n,
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            rat: &self.rat * r,
            sqrt2: &self.sqrt2 * r,
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub(crate) fn denom_lcm(&self) -> BigInt {
        self.rat.denom().lcm(self.sqrt2.denom())
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.rat.to_f64().unwrap_or(f64::NAN) + self.sqrt2.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

/// Formats a rational as `num/den` in lowest terms (always with a denominator).
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => match s.split_once('.') {
            Some((int, frac)) => {
                let digits = format!("{int}{frac}");
                if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let n = BigInt::from_str(&digits).map_err(|_| bad())?;
                Ok(BigRational::new(n, num_traits::pow(BigInt::from(10), frac.len())))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        },
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.sqrt2.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}*sqrt2", self.sqrt2),
            (false, false) => write!(f, "({} + {}*sqrt2)", self.rat, self.sqrt2),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat + &rhs.rat,
            sqrt2: &self.sqrt2 + &rhs.sqrt2,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat - &rhs.rat,
            sqrt2: &self.sqrt2 - &rhs.sqrt2,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_plain() && rhs.is_plain() {
            return Scalar::from_rational(&self.rat * &rhs.rat);
        }
        let two = BigRational::from_integer(2.into());
        Scalar {
            rat: &self.rat * &rhs.rat + two * &self.sqrt2 * &rhs.sqrt2,
            sqrt2: &self.rat * &rhs.sqrt2 + &self.sqrt2 * &rhs.rat,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        self.sqrt2 += &rhs.sqrt2;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rat -= &rhs.rat;
        self.sqrt2 -= &rhs.sqrt2;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -self.rat,
            sqrt2: -self.sqrt2,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_parse_exactly() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("1.01").unwrap(), r(101, 100));
        assert_eq!(parse_rational("-0.5").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("47/2").unwrap(), r(47, 2));
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let r = Scalar::sqrt2();
        assert_eq!(&r * &r, Scalar::from_int(2));
        assert_eq!(Scalar::sqrt2_pow(24), Scalar::from_int(4096));
        assert_eq!(
            Scalar::sqrt2_pow(-29),
            Scalar::new(BigRational::zero(), BigRational::new(1.into(), 32768.into()))
        );
    }

    #[test]
    fn product_rule() {
        // (1 + 2√2)(3 − √2) = 3 − √2 + 6√2 − 4 = −1 + 5√2
        let a = Scalar::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let b = Scalar::new(
            BigRational::from_integer(3.into()),
            BigRational::from_integer((-1).into()),
        );
        let p = &a * &b;
        assert_eq!(
            p,
            Scalar::new(
                BigRational::from_integer((-1).into()),
                BigRational::from_integer(5.into())
            )
        );
        assert_eq!(&a * &a.inverse().unwrap(), Scalar::one());
    }

    #[test]
    fn predicates_reject_irrational() {
        assert!(Scalar::sqrt2().is_integer().is_err());
        assert!(Scalar::sqrt2().is_nonnegative().is_err());
        assert!(Scalar::from_ratio(3, 2).is_nonnegative().unwrap());
        assert!(!Scalar::from_ratio(3, 2).is_integer().unwrap());
    }

    #[test]
    fn exact_sign() {
        let s = |a: i64, b: i64| Scalar::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
        assert_eq!(s(3, -2).signum(), Ordering::Greater); // 3 − 2.83
        assert_eq!(s(2, -2).signum(), Ordering::Less);
        assert_eq!(s(-3, 2).signum(), Ordering::Less);
        assert_eq!(s(-2, 2).signum(), Ordering::Greater);
        assert_eq!(s(0, 0).signum(), Ordering::Equal);
        assert!(Scalar::zero().inverse().is_err());
    }

    #[test]
    fn rational_strings() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(rational_to_string(&r), "-3/2");
        assert_eq!(rational_to_string(&parse_rational("7").unwrap()), "7/1");
        assert!(parse_rational("1/0").is_err());
    }
}
