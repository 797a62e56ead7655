//! Builders for the named series: fermion characters, vacuum and Verma
//! characters, Dedekind eta, `j`, and McKay–Thompson series of classes
//! 1A, 2A and 2B.
//!
//! Every builder takes a [`PrecisionPolicy`] counting ticks past the leading
//! term; the result is exact on that range.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qseries::{exponent_to_tick, PrecisionPolicy, QSeries, TICKS_PER_Q};
use crate::scalar::Scalar;

/// Dense integer coefficients on a grid of `step` ticks, used to assemble
/// infinite products term by term.
struct Grid {
    step: i64,
    v: Vec<BigInt>,
}

impl Grid {
    fn one(step: i64, len: usize) -> Self {
        let mut v = vec![BigInt::zero(); len.max(1)];
        v[0] = BigInt::one();
        Self { step, v }
    }

    /// Number of grid steps for an exponent given in ticks.
    fn steps(&self, ticks: i64) -> usize {
        debug_assert_eq!(ticks % self.step, 0);
        (ticks / self.step) as usize
    }

    /// Multiplies by `(1 + s·x^e)` where `x^e` spans `ticks` ticks.
    fn times_binomial(&mut self, ticks: i64, s: i64) {
        let e = self.steps(ticks);
        for i in (e..self.v.len()).rev() {
            let t = &self.v[i - e] * s;
            self.v[i] += t;
        }
    }

    /// Divides by `(1 − x^e)`.
    fn over_one_minus(&mut self, ticks: i64) {
        let e = self.steps(ticks);
        for i in e..self.v.len() {
            let t = self.v[i - e].clone();
            self.v[i] += t;
        }
    }

    fn len_ticks(&self) -> i64 {
        self.v.len() as i64 * self.step
    }

    fn into_series(self, min_tick: i64, prec_tick: i64, scale: &Scalar) -> QSeries {
        let coeffs = self.v.into_iter().map(|c| &Scalar::from_bigint(c) * scale).collect();
        QSeries::from_strided(min_tick, self.step, prec_tick, coeffs)
    }
}

fn grid_len(terms: i64, step: i64) -> usize {
    ((terms + step - 1) / step).max(1) as usize
}

/// Multiplies by `∏_{n ≥ from} (1 + s·x^{a·n+b})` on the grid, `x^1` spanning `unit` ticks.
fn product_binomial(g: &mut Grid, unit: i64, a: i64, b: i64, from: i64, s: i64) {
    let mut n = from;
    loop {
        let ticks = unit * (a * n + b);
        if ticks >= g.len_ticks() {
            break;
        }
        if ticks > 0 {
            g.times_binomial(ticks, s);
        }
        n += 1;
    }
}

/// Divides by `∏_{n ≥ from} (1 − q^{n·scale})`.
fn product_partition(g: &mut Grid, scale: i64, from: i64) {
    let mut n = from;
    while n * scale * TICKS_PER_Q < g.len_ticks() {
        g.over_one_minus(n * scale * TICKS_PER_Q);
        n += 1;
    }
}

/// `χ_{1/2} = q^{-1/48} ∏_{n≥0} (1 + q^{n+1/2})`.
pub fn chi_half(prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let mut g = Grid::one(24, grid_len(terms, 24));
    product_binomial(&mut g, 24, 2, 1, 0, 1);
    g.into_series(-1, -1 + terms, &Scalar::one())
}

/// `χ̃_{1/2} = √2·q^{1/24} ∏_{n≥1} (1 + q^n)`.
pub fn chi_half_tilde(prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let mut g = Grid::one(TICKS_PER_Q, grid_len(terms, TICKS_PER_Q));
    product_binomial(&mut g, TICKS_PER_Q, 1, 0, 1, 1);
    g.into_series(2, 2 + terms, &Scalar::sqrt2())
}

/// Tick of `q^{-c/24}`.
pub fn vacuum_tick(c: HalfInt) -> i64 {
    -c.twice()
}

/// `χ_{M_c} = q^{-c/24} ∏_{n≥2} (1 − q^n)^{-1}`.
pub fn virasoro_vacuum(c: HalfInt, prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let mut g = Grid::one(TICKS_PER_Q, grid_len(terms, TICKS_PER_Q));
    product_partition(&mut g, 1, 2);
    let t = vacuum_tick(c);
    g.into_series(t, t + terms, &Scalar::one())
}

/// `χ_{M_c^{N=1}} = q^{-c/24} ∏_{n≥2} (1 + q^{n−1/2}) / (1 − q^n)`.
pub fn n1_vacuum(c: HalfInt, prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let mut g = Grid::one(24, grid_len(terms, 24));
    product_binomial(&mut g, 24, 2, -1, 2, 1);
    product_partition(&mut g, 1, 2);
    let t = vacuum_tick(c);
    g.into_series(t, t + terms, &Scalar::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Virasoro: `∏_{n≥1} (1 − q^n)^{-1}`.
    Plain,
    /// Neveu–Schwarz: `∏_{n≥1} (1 + q^{n−1/2}) / (1 − q^n)`.
    Ns,
}

impl FromStr for Sector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Sector::Plain),
            "ns" => Ok(Sector::Ns),
            _ => Err(Error::Parse(format!("unknown sector '{s}'"))),
        }
    }
}

/// Generic Verma character `q^{h − c/24}` times the full sector product.
pub fn verma_generic(c: HalfInt, h: &BigRational, sector: Sector, prec: PrecisionPolicy) -> Result<QSeries> {
    let t = exponent_to_tick(h)? + vacuum_tick(c);
    Ok(verma_at_tick(t, sector, prec))
}

pub(crate) fn verma_at_tick(t: i64, sector: Sector, prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let mut g = match sector {
        Sector::Plain => Grid::one(TICKS_PER_Q, grid_len(terms, TICKS_PER_Q)),
        Sector::Ns => {
            let mut g = Grid::one(24, grid_len(terms, 24));
            product_binomial(&mut g, 24, 2, -1, 1, 1);
            g
        }
    };
    product_partition(&mut g, 1, 1);
    g.into_series(t, t + terms, &Scalar::one())
}

/// `η(q^scale) = q^{scale/24} ∏_{n≥1} (1 − q^{scale·n})`.
pub fn eta(scale: i64, prec: PrecisionPolicy) -> Result<QSeries> {
    if scale < 1 {
        return Err(Error::InvalidArgument(format!(
            "eta scale must be positive, got {scale}"
        )));
    }
    let terms = prec.terms();
    let mut g = Grid::one(TICKS_PER_Q, grid_len(terms, TICKS_PER_Q));
    product_binomial(&mut g, TICKS_PER_Q, scale, 0, 1, -1);
    Ok(g.into_series(2 * scale, 2 * scale + terms, &Scalar::one()))
}

fn divisor_power_sum(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `1 + factor·Σ σ_k(n) q^n` through `q^{n_max}`.
fn eisenstein(k: u32, factor: i64, n_max: usize) -> QSeries {
    let coeffs = (0..=n_max)
        .map(|n| {
            if n == 0 {
                Scalar::one()
            } else {
                Scalar::from_bigint(divisor_power_sum(n as u64, k) * factor)
            }
        })
        .collect();
    QSeries::from_strided(0, TICKS_PER_Q, (n_max as i64 + 1) * TICKS_PER_Q, coeffs)
}

/// Normalized Eisenstein series `E_4 = 1 + 240 Σ σ_3(n) q^n`.
pub fn e4(n_max: usize) -> QSeries {
    eisenstein(3, 240, n_max)
}

/// Normalized Eisenstein series `E_6 = 1 − 504 Σ σ_5(n) q^n`.
pub fn e6(n_max: usize) -> QSeries {
    eisenstein(5, -504, n_max)
}

/// `j = 1728·E_4³/(E_4³ − E_6²)`; `normalized` subtracts 744 to give `J`.
pub fn j_invariant(normalized: bool, prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let n = (terms + TICKS_PER_Q - 1) / TICKS_PER_Q + 1;
    let a = e4(n as usize).pow(3).expect("nonnegative power");
    let b = e6(n as usize).pow(2).expect("nonnegative power");
    let disc = a.sub(&b);
    let j = a
        .mul(&disc.invert().expect("E4^3 - E6^2 starts with 1728 q"))
        .scale(&Scalar::from_int(1728))
        .truncate(-TICKS_PER_Q + terms);
    if normalized {
        j.add_monomial(&Scalar::from_int(-744), 0)
    } else {
        j
    }
}

/// Hauptmodul `u = (η(q)/η(q²))^{24} = q^{-1} ∏_{n≥1} (1 + q^n)^{-24}`.
pub fn hauptmodul_u(prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let mut g = Grid::one(TICKS_PER_Q, grid_len(terms, TICKS_PER_Q));
    for _ in 0..24 {
        product_binomial(&mut g, TICKS_PER_Q, 1, 0, 1, 1);
    }
    let lead = -TICKS_PER_Q;
    g.into_series(0, terms, &Scalar::one())
        .invert()
        .expect("unit leading coefficient")
        .shift(lead)
}

/// `j` through the hauptmodul identity `j = (u + 256)³ / u²`.
pub fn j_from_hauptmodul(prec: PrecisionPolicy) -> QSeries {
    let terms = prec.terms();
    let u = hauptmodul_u(PrecisionPolicy::new(terms + 3 * TICKS_PER_Q).expect("positive"));
    let num = u.add_monomial(&Scalar::from_int(256), 0).pow(3).expect("power");
    let den = u.pow(-2).expect("invertible");
    num.mul(&den).truncate(-TICKS_PER_Q + terms)
}

/// Conjugacy classes of the monster with known McKay–Thompson series here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonsterClass {
    A1,
    A2,
    B2,
}

impl MonsterClass {
    pub const ALL: [MonsterClass; 3] = [MonsterClass::A1, MonsterClass::A2, MonsterClass::B2];
}

impl fmt::Display for MonsterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonsterClass::A1 => "1A",
            MonsterClass::A2 => "2A",
            MonsterClass::B2 => "2B",
        })
    }
}

impl FromStr for MonsterClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "1A" => Ok(MonsterClass::A1),
            "2A" => Ok(MonsterClass::A2),
            "2B" => Ok(MonsterClass::B2),
            _ => Err(Error::Parse(format!("unsupported class '{s}' (expected 1A, 2A or 2B)"))),
        }
    }
}

/// McKay–Thompson series: `T_1A = J`, `T_2B = u + 24`, `T_2A = u + 2^12/u + 24`.
pub fn mckay_thompson(class: MonsterClass, prec: PrecisionPolicy) -> QSeries {
    match class {
        MonsterClass::A1 => j_invariant(true, prec),
        MonsterClass::B2 => hauptmodul_u(prec).add_monomial(&Scalar::from_int(24), 0),
        MonsterClass::A2 => {
            let u = hauptmodul_u(prec);
            let inv = u.invert().expect("unit leading coefficient");
            u.add(&inv.scale(&Scalar::from_int(4096)))
                .add_monomial(&Scalar::from_int(24), 0)
        }
    }
}

/// Every series the command line can expand by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharName {
    ChiHalf,
    ChiHalfTilde,
    VirasoroVacuum(HalfInt),
    N1Vacuum(HalfInt),
    VermaGeneric { c: HalfInt, h: BigRational, sector: Sector },
    Eta(i64),
    JInvariant,
    JNormalized,
    McKayThompson(MonsterClass),
}

impl CharName {
    pub fn build(&self, prec: PrecisionPolicy) -> Result<QSeries> {
        Ok(match self {
            CharName::ChiHalf => chi_half(prec),
            CharName::ChiHalfTilde => chi_half_tilde(prec),
            CharName::VirasoroVacuum(c) => virasoro_vacuum(*c, prec),
            CharName::N1Vacuum(c) => n1_vacuum(*c, prec),
            CharName::VermaGeneric { c, h, sector } => verma_generic(*c, h, *sector, prec)?,
            CharName::Eta(s) => eta(*s, prec)?,
            CharName::JInvariant => j_invariant(false, prec),
            CharName::JNormalized => j_invariant(true, prec),
            CharName::McKayThompson(cls) => mckay_thompson(*cls, prec),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(n: i64) -> PrecisionPolicy {
        PrecisionPolicy::new(n).unwrap()
    }

    fn ints(s: &QSeries, from_tick: i64, step: i64, n: usize) -> Vec<i64> {
        use num_traits::ToPrimitive;
        (0..n)
            .map(|i| {
                s.coefficient_at_tick(from_tick + i as i64 * step)
                    .unwrap()
                    .rat()
                    .to_integer()
                    .to_i64()
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn chi_half_head() {
        let chi = chi_half(terms(200));
        assert_eq!(ints(&chi, -1, 24, 5), vec![1, 1, 0, 1, 1]);
        assert_eq!(chi.stride(), 24);
    }

    #[test]
    fn chi_half_tilde_is_sqrt2_multiple() {
        let t = chi_half_tilde(terms(480));
        assert!(t.nonzero_terms().all(|(_, c)| c.rat().is_zero()));
        let lead = t.pow(24).unwrap();
        assert_eq!(lead.min_tick(), 48);
        assert_eq!(lead.leading_coefficient().unwrap(), &Scalar::from_int(4096));
    }

    #[test]
    fn vacuum_heads() {
        let c48 = HalfInt::from_int(48);
        let v = virasoro_vacuum(c48, terms(48 * 7));
        assert_eq!(v.min_tick(), -96);
        assert_eq!(ints(&v, -96, 48, 7), vec![1, 0, 1, 1, 2, 2, 4]);
        let n = n1_vacuum(c48, terms(48 * 3));
        assert_eq!(ints(&n, -96, 24, 6), vec![1, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn verma_heads() {
        let c = HalfInt::from_int(48);
        let v = verma_generic(c, &BigRational::from_integer(2.into()), Sector::Plain, terms(48 * 4)).unwrap();
        assert_eq!(ints(&v, 0, 48, 4), vec![1, 1, 2, 3]);
        let ns = verma_generic(c, &BigRational::new(5.into(), 2.into()), Sector::Ns, terms(48)).unwrap();
        assert_eq!(ns.min_tick(), 24);
    }

    #[test]
    fn j_head() {
        let j = j_invariant(false, terms(48 * 5));
        assert_eq!(ints(&j, -48, 48, 5), vec![1, 744, 196884, 21493760, 864299970]);
        let big = j_invariant(true, terms(48 * 3));
        assert_eq!(big.coefficient_at_tick(0).unwrap(), Scalar::zero());
    }

    #[test]
    fn thompson_heads() {
        let t2a = mckay_thompson(MonsterClass::A2, terms(48 * 5));
        assert_eq!(ints(&t2a, -48, 48, 5), vec![1, 0, 4372, 96256, 1240002]);
        let t2b = mckay_thompson(MonsterClass::B2, terms(48 * 5));
        assert_eq!(ints(&t2b, -48, 48, 5), vec![1, 0, 276, -2048, 11202]);
    }

    #[test]
    fn class_names() {
        for c in MonsterClass::ALL {
            assert_eq!(c.to_string().parse::<MonsterClass>().unwrap(), c);
        }
        assert!("3A".parse::<MonsterClass>().is_err());
    }
}
