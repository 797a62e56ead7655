//! Truncated formal Laurent series in `q^{1/48}` over ℚ(√2).
//!
//! Exponents live on a fixed grid of 1/48 of a power of `q`; a grid position
//! is called a *tick*. Every series carries an explicit precision: the
//! coefficient at tick `t` is known iff `t < prec_tick`, and asking for an
//! unknown coefficient is an error rather than a silent zero.
//!
//! Storage is dense along an arithmetic progression `min_tick + i·stride`
//! where `stride` divides 48. All positions between stored ones are known to
//! be zero. Series in `q^{1/2}` therefore cost one slot per half power
//! instead of 24.

mod json;
pub mod reversion;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use json::SeriesJson;
pub use reversion::{lagrange_coefficient, rebase};

/// Ticks per unit power of `q`.
pub const TICKS_PER_Q: i64 = 48;

/// Expansion variable for derivatives and reversion: `q` or `p = q^{1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Q,
    P,
}

impl Var {
    pub const fn ticks(self) -> i64 {
        match self {
            Var::Q => TICKS_PER_Q,
            Var::P => TICKS_PER_Q / 2,
        }
    }
}

/// How many ticks past the leading term builders compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    default_terms: i64,
}

impl PrecisionPolicy {
    pub fn new(default_terms: i64) -> Result<Self> {
        if default_terms < 1 {
            return Err(Error::InvalidArgument(format!(
                "precision must be at least one tick, got {default_terms}"
            )));
        }
        Ok(Self { default_terms })
    }

    /// Precision covering `q`-powers `0..=n` past the leading term.
    pub fn whole_powers(n: i64) -> Result<Self> {
        Self::new(TICKS_PER_Q * (n + 1))
    }

    pub fn terms(self) -> i64 {
        self.default_terms
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            default_terms: 8 * TICKS_PER_Q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    min_tick: i64,
    prec_tick: i64,
    stride: i64,
    coeffs: Vec<Scalar>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    if a <= 0 {
        0
    } else {
        (a + b - 1) / b
    }
}

impl QSeries {
    /// Builds a series from coefficients at `min_tick + i·stride`.
    ///
    /// Missing trailing coefficients below `prec_tick` are taken to be zero;
    /// entries at or beyond `prec_tick` are dropped.
    pub fn from_strided(min_tick: i64, stride: i64, prec_tick: i64, coeffs: Vec<Scalar>) -> Self {
        assert!(
            stride > 0 && TICKS_PER_Q % stride == 0,
            "stride {stride} must divide 48"
        );
        Self::normalize(min_tick, stride, prec_tick, coeffs)
    }

    /// Dense coefficients on consecutive ticks starting at `min_tick`.
    pub fn from_ticks(min_tick: i64, prec_tick: i64, coeffs: Vec<Scalar>) -> Self {
        Self::from_strided(min_tick, 1, prec_tick, coeffs)
    }

    pub fn from_int_coeffs(min_tick: i64, stride: i64, prec_tick: i64, coeffs: &[i64]) -> Self {
        Self::from_strided(
            min_tick,
            stride,
            prec_tick,
            coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
        )
    }

    /// Sparse constructor from `(tick, coefficient)` pairs.
    pub fn from_terms(terms: &[(i64, Scalar)], prec_tick: i64) -> Self {
        let Some(min) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(prec_tick);
        };
        let max = terms.iter().map(|t| t.0).max().unwrap();
        let mut dense = vec![Scalar::zero(); (max - min + 1) as usize];
        for (t, c) in terms {
            dense[(t - min) as usize] += c;
        }
        Self::from_ticks(min, prec_tick, dense)
    }

    pub fn zero(prec_tick: i64) -> Self {
        Self {
            min_tick: prec_tick,
            prec_tick,
            stride: TICKS_PER_Q,
            coeffs: Vec::new(),
        }
    }

    pub fn one(prec_tick: i64) -> Self {
        Self::monomial(Scalar::one(), 0, prec_tick)
    }

    pub fn monomial(coeff: Scalar, tick: i64, prec_tick: i64) -> Self {
        Self::from_strided(tick, TICKS_PER_Q, prec_tick, vec![coeff])
    }

    fn normalize(min_tick: i64, stride: i64, prec_tick: i64, mut coeffs: Vec<Scalar>) -> Self {
        let len = ceil_div(prec_tick - min_tick, stride) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, Scalar::zero());
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero(prec_tick);
        };
        let min_tick = min_tick + first as i64 * stride;
        coeffs.drain(..first);

        let mut g = TICKS_PER_Q;
        for (i, c) in coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                g = g.gcd(&(i as i64 * stride));
                if g == stride {
                    break;
                }
            }
        }
        if g != stride {
            let step = (g / stride) as usize;
            let len = ceil_div(prec_tick - min_tick, g) as usize;
            coeffs = coeffs.into_iter().step_by(step).take(len).collect();
            coeffs.resize(len, Scalar::zero());
        }
        Self {
            min_tick,
            prec_tick,
            stride: g,
            coeffs,
        }
    }

    /// Tick of the leading nonzero term; equals `prec_tick` for a zero series.
    pub fn min_tick(&self) -> i64 {
        self.min_tick
    }

    pub fn prec_tick(&self) -> i64 {
        self.prec_tick
    }

    pub fn stride(&self) -> i64 {
        self.stride
    }

    /// Number of known ticks past the leading term.
    pub fn relative_precision(&self) -> i64 {
        self.prec_tick - self.min_tick
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.coeffs.first()
    }

    /// Iterates over stored `(tick, coefficient)` pairs, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.min_tick + i as i64 * self.stride, c))
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn coefficient_at_tick(&self, tick: i64) -> Result<Scalar> {
        if tick >= self.prec_tick {
            return Err(Error::BeyondPrecision {
                tick,
                prec: self.prec_tick,
            });
        }
        if tick < self.min_tick || (tick - self.min_tick) % self.stride != 0 {
            return Ok(Scalar::zero());
        }
        Ok(self.coeffs[((tick - self.min_tick) / self.stride) as usize].clone())
    }

    /// Coefficient of `q^exponent`.
    pub fn coefficient(&self, exponent: &BigRational) -> Result<Scalar> {
        self.coefficient_at_tick(exponent_to_tick(exponent)?)
    }

    /// True if every stored coefficient has zero √2 part.
    pub fn is_plain(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_plain)
    }

    /// Lowers the precision to `prec_tick` (never raises it).
    pub fn truncate(&self, prec_tick: i64) -> Self {
        if prec_tick >= self.prec_tick {
            return self.clone();
        }
        Self::normalize(self.min_tick, self.stride, prec_tick, self.coeffs.clone())
    }

    /// Multiplies by the exact monomial `q^{ticks/48}`.
    pub fn shift(&self, ticks: i64) -> Self {
        Self {
            min_tick: self.min_tick + ticks,
            prec_tick: self.prec_tick + ticks,
            stride: self.stride,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.prec_tick);
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&Scalar::from_rational(r.clone()))
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Adds an exact constant (or monomial) without touching precision.
    pub fn add_monomial(&self, coeff: &Scalar, tick: i64) -> Self {
        if tick >= self.prec_tick {
            return self.clone();
        }
        self.add(&Self::monomial(coeff.clone(), tick, self.prec_tick))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec_tick.min(other.prec_tick);
        if other.is_zero() {
            return self.truncate(prec);
        }
        if self.is_zero() {
            let o = other.truncate(prec);
            return if negate { o.neg() } else { o };
        }
        let min = self.min_tick.min(other.min_tick);
        let g = self
            .stride
            .gcd(&other.stride)
            .gcd(&(self.min_tick - other.min_tick).abs());
        let len = ceil_div(prec - min, g) as usize;
        let mut out = vec![Scalar::zero(); len];
        for (t, c) in self.iter() {
            if t < prec {
                out[((t - min) / g) as usize] += c;
            }
        }
        for (t, c) in other.iter() {
            if t < prec {
                let slot = &mut out[((t - min) / g) as usize];
                if negate {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        Self::normalize(min, g, prec, out)
    }

    /// Cauchy product on the tick grid.
    ///
    /// The result is known below `min(prec_a + min_b, prec_b + min_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.prec_tick + other.min_tick).min(other.prec_tick + self.min_tick);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let min = self.min_tick + other.min_tick;
        let g = self.stride.gcd(&other.stride);
        let len = ceil_div(prec - min, g) as usize;
        let coeffs = convolve(
            &self.coeffs,
            (self.stride / g) as usize,
            &other.coeffs,
            (other.stride / g) as usize,
            len,
        );
        Self::normalize(min, g, prec, coeffs)
    }

    /// Multiplicative inverse; the leading tick is negated and the relative
    /// precision is preserved.
    pub fn invert(&self) -> Result<Self> {
        let Some(lead) = self.leading_coefficient() else {
            return Err(Error::NotInvertible("zero series".into()));
        };
        let lead_inv = lead.inverse()?;
        let n = self.coeffs.len();
        let coeffs = if self.is_plain() && self.coeffs.iter().all(|c| c.rat().is_integer()) && lead.rat().abs().is_one()
        {
            invert_integer(&self.coeffs, lead.rat().numer())
        } else {
            let mut out: Vec<Scalar> = Vec::with_capacity(n);
            out.push(lead_inv.clone());
            for k in 1..n {
                let mut acc = Scalar::zero();
                for i in 1..=k {
                    let c = &self.coeffs[i];
                    if !c.is_zero() && !out[k - i].is_zero() {
                        acc += &(c * &out[k - i]);
                    }
                }
                out.push(-(&acc * &lead_inv));
            }
            out
        };
        let rel = self.relative_precision();
        Ok(Self::normalize(
            -self.min_tick,
            self.stride,
            rel - self.min_tick,
            coeffs,
        ))
    }

    /// `self^n` by repeated squaring; negative `n` goes through [`invert`](Self::invert).
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        let mut result = Self::one(self.relative_precision());
        if n == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut e = n as u64;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Formal derivative with respect to `var`, using exact rational exponents.
    pub fn derivative(&self, var: Var) -> Self {
        let vt = var.ticks();
        let coeffs = self
            .iter()
            .map(|(t, c)| c.scale(&BigRational::new(t.into(), vt.into())))
            .collect();
        Self::normalize(self.min_tick - vt, self.stride, self.prec_tick - vt, coeffs)
    }

    /// Keeps only the terms whose tick satisfies `keep`.
    pub fn filter_ticks(&self, keep: impl Fn(i64) -> bool) -> Self {
        let coeffs = self
            .iter()
            .map(|(t, c)| if keep(t) { c.clone() } else { Scalar::zero() })
            .collect();
        Self::normalize(self.min_tick, self.stride, self.prec_tick, coeffs)
    }

    /// True if both agree on every tick below the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let prec = self.prec_tick.min(other.prec_tick);
        self.truncate(prec) == other.truncate(prec)
    }
}

/// Converts a rational `q`-exponent to a tick, rejecting off-grid values.
pub fn exponent_to_tick(exponent: &BigRational) -> Result<i64> {
    use num_traits::ToPrimitive;
    let t = exponent * BigRational::from_integer(TICKS_PER_Q.into());
    if !t.is_integer() {
        return Err(Error::OffGrid(exponent.to_string()));
    }
    t.to_integer()
        .to_i64()
        .ok_or_else(|| Error::OffGrid(exponent.to_string()))
}

pub fn tick_to_exponent(tick: i64) -> BigRational {
    BigRational::new(tick.into(), TICKS_PER_Q.into())
}

/// Integer-scaled parts of a coefficient vector: `coeffs = (rat + sqrt2·√2) / den`.
struct Scaled {
    rat: Vec<BigInt>,
    sqrt2: Option<Vec<BigInt>>,
    den: BigInt,
}

fn scale_to_integers(coeffs: &[Scalar]) -> Scaled {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let part = |r: &BigRational| -> BigInt {
        if r.is_zero() {
            BigInt::zero()
        } else {
            r.numer() * (&den / r.denom())
        }
    };
    let rat = coeffs.iter().map(|c| part(c.rat())).collect();
    let sqrt2 = if coeffs.iter().all(Scalar::is_plain) {
        None
    } else {
        Some(coeffs.iter().map(|c| part(c.sqrt2_part())).collect())
    };
    Scaled { rat, sqrt2, den }
}

fn convolve_int(x: &[BigInt], sx: usize, y: &[BigInt], sy: usize, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, a) in x.iter().enumerate() {
        let base = i * sx;
        if base >= n {
            break;
        }
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            let k = base + j * sy;
            if k >= n {
                break;
            }
            if !b.is_zero() {
                out[k] += a * b;
            }
        }
    }
    out
}

fn convolve(x: &[Scalar], sx: usize, y: &[Scalar], sy: usize, n: usize) -> Vec<Scalar> {
    let a = scale_to_integers(x);
    let b = scale_to_integers(y);
    let den = BigRational::from_integer(&a.den * &b.den);
    let mut rat = convolve_int(&a.rat, sx, &b.rat, sy, n);
    let mut sqrt2 = vec![BigInt::zero(); n];
    if let (Some(xs), Some(ys)) = (&a.sqrt2, &b.sqrt2) {
        for (r, v) in rat.iter_mut().zip(convolve_int(xs, sx, ys, sy, n)) {
            *r += v * 2;
        }
    }
    if let Some(xs) = &a.sqrt2 {
        for (s, v) in sqrt2.iter_mut().zip(convolve_int(xs, sx, &b.rat, sy, n)) {
            *s += v;
        }
    }
    if let Some(ys) = &b.sqrt2 {
        for (s, v) in sqrt2.iter_mut().zip(convolve_int(&a.rat, sx, ys, sy, n)) {
            *s += v;
        }
    }
    rat.into_iter()
        .zip(sqrt2)
        .map(|(r, s)| Scalar::new(BigRational::from_integer(r) / &den, BigRational::from_integer(s) / &den))
        .collect()
}

/// Inverse of an integer series with unit leading coefficient.
fn invert_integer(coeffs: &[Scalar], lead: &BigInt) -> Vec<Scalar> {
    let c: Vec<BigInt> = coeffs.iter().map(|s| s.rat().numer().clone()).collect();
    let mut out: Vec<BigInt> = Vec::with_capacity(c.len());
    out.push(lead.clone());
    for k in 1..c.len() {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            if !c[i].is_zero() && !out[k - i].is_zero() {
                acc += &c[i] * &out[k - i];
            }
        }
        // lead is ±1, so dividing by it is multiplying by it
        out.push(-(acc * lead));
    }
    out.into_iter().map(Scalar::from_bigint).collect()
}

fn write_exponent(f: &mut fmt::Formatter<'_>, tick: i64) -> fmt::Result {
    let e = tick_to_exponent(tick);
    if e.is_integer() {
        match e.to_integer() {
            n if n.is_one() => write!(f, "q"),
            n => write!(f, "q^{n}"),
        }
    } else {
        write!(f, "q^({e})")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, c) in self.nonzero_terms() {
            let (neg, mag) = if c.is_plain() && c.rat().is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if t == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != Scalar::one() {
                    write!(f, "{mag}*")?;
                }
                write_exponent(f, t)?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(")?;
        if self.prec_tick == 0 {
            write!(f, "1")?;
        } else {
            write_exponent(f, self.prec_tick)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64], min_q: i64, prec_q: i64) -> QSeries {
        QSeries::from_int_coeffs(min_q * 48, 48, prec_q * 48, coeffs)
    }

    #[test]
    fn cancellation_and_identity() {
        let a = q(&[1, 1], -1, 5);
        let b = q(&[-1, 0, 1], -1, 5);
        assert_eq!(a.add(&b), q(&[1, 1], 0, 5));
        assert_eq!(a.add(&QSeries::zero(5 * 48)), a);
    }

    #[test]
    fn truncated_product() {
        let a = q(&[1, 1], 0, 2);
        let b = q(&[1, -1], 0, 2);
        assert_eq!(a.mul(&b), q(&[1], 0, 2));
        // (q^-1 + 1)(q - 1) = q - q^-1 exactly on the known range
        let a = q(&[1, 1], -1, 10);
        let b = q(&[-1, 1], 0, 10);
        assert_eq!(a.mul(&b), q(&[-1, 0, 1], -1, 9));
    }

    #[test]
    fn geometric_and_shifted_inverse() {
        let a = q(&[1, -1], 0, 6);
        assert_eq!(a.invert().unwrap(), q(&[1, 1, 1, 1, 1, 1], 0, 6));
        let b = q(&[1, 1], 1, 6);
        assert_eq!(b.invert().unwrap(), q(&[1, -1, 1, -1, 1], -1, 4));
        assert!(QSeries::zero(10).invert().is_err());
    }

    #[test]
    fn derivative_examples() {
        let s = QSeries::monomial(Scalar::one(), -1, 100);
        let d = s.derivative(Var::Q);
        assert_eq!(d.min_tick(), -49);
        assert_eq!(d.leading_coefficient().unwrap(), &Scalar::from_ratio(-1, 48));
        let s = QSeries::from_terms(&[(24, Scalar::from_int(3)), (96, Scalar::one())], 200);
        let d = s.derivative(Var::Q);
        assert_eq!(d.coefficient_at_tick(-24).unwrap(), Scalar::from_ratio(3, 2));
        assert_eq!(d.coefficient_at_tick(48).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn coefficient_lookup_rules() {
        let s = q(&[1, 1], 0, 3);
        assert_eq!(
            s.coefficient(&BigRational::new(1.into(), 2.into())).unwrap(),
            Scalar::zero()
        );
        assert!(s.coefficient(&BigRational::new(1.into(), 96.into())).is_err());
        assert!(matches!(s.coefficient_at_tick(144), Err(Error::BeyondPrecision { .. })));
        assert_eq!(s.coefficient_at_tick(-48).unwrap(), Scalar::zero());
    }

    #[test]
    fn stride_is_recovered() {
        let s = QSeries::from_ticks(-1, 200, {
            let mut v = vec![Scalar::zero(); 73];
            v[0] = Scalar::one();
            v[24] = Scalar::from_int(2);
            v[72] = Scalar::from_int(5);
            v
        });
        assert_eq!(s.stride(), 24);
        assert_eq!(s.coefficient_at_tick(71).unwrap(), Scalar::from_int(5));
        assert_eq!(s.coefficient_at_tick(70).unwrap(), Scalar::zero());
    }

    #[test]
    fn mixed_stride_addition() {
        let a = QSeries::from_int_coeffs(-1, 24, 200, &[1, 1, 0, 1]);
        let b = QSeries::from_int_coeffs(0, 48, 100, &[1, 1]);
        let s = a.add(&b);
        assert_eq!(s.prec_tick(), 100);
        assert_eq!(s.coefficient_at_tick(-1).unwrap(), Scalar::one());
        assert_eq!(s.coefficient_at_tick(0).unwrap(), Scalar::one());
        assert_eq!(s.coefficient_at_tick(23).unwrap(), Scalar::one());
        assert_eq!(s.coefficient_at_tick(48).unwrap(), Scalar::one());
        assert_eq!(s.coefficient_at_tick(71).unwrap(), Scalar::one());
    }

    #[test]
    fn sqrt2_products() {
        let r = QSeries::monomial(Scalar::sqrt2(), 2, 200);
        let sq = r.mul(&r);
        assert_eq!(sq.leading_coefficient().unwrap(), &Scalar::from_int(2));
        assert_eq!(sq.min_tick(), 4);
        assert_eq!(
            r.pow(-1).unwrap().leading_coefficient().unwrap(),
            &Scalar::sqrt2().scale(&BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn display() {
        let s = q(&[1, 0, 4372, 96256], -1, 3);
        assert_eq!(s.to_string(), "q^-1 + 4372*q + 96256*q^2 + O(q^3)");
        let s = QSeries::from_terms(&[(-1, Scalar::one()), (23, Scalar::from_int(-2))], 48);
        assert_eq!(s.to_string(), "q^(-1/48) - 2*q^(23/48) + O(q)");
    }
}
