//! Characters and shadows in the `χ_{1/2}` basis.
//!
//! A character is `Σ_{r=0}^{k} a_r χ_{1/2}^{2c−24r}` and its shadow is
//! `α Σ_r (−1)^r a_r χ̃_{1/2}^{2c−24r}` with `α = 1` for integral `c` and
//! `1/√2` otherwise. The phase `(−1)^r` comes from `χ_{1/2}(τ+1)`, which
//! carries `e^{−2πi/48}` relative to the Neveu–Schwarz character.
//!
//! Unknown trailing `a_r` stay symbolic: a [`SymbolicSeries`] is a concrete
//! series plus one series per free parameter, so a single expansion serves
//! every candidate assignment.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::modchar::{self, Sector};
use crate::qseries::{PrecisionPolicy, QSeries, TICKS_PER_Q};
use crate::scalar::{rational_to_string, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// General self-dual superalgebra: `k = ⌊c/8⌋`.
    Svoa,
    /// N=1 supersymmetric, shadow without pole: `k = ⌊c/12⌋`.
    N1,
}

impl Mode {
    pub fn k(self, c: HalfInt) -> usize {
        let k = match self {
            Mode::Svoa => c.floor_div(8),
            Mode::N1 => c.floor_div(12),
        };
        k.max(0) as usize
    }

    pub fn sector(self) -> Sector {
        match self {
            Mode::Svoa => Sector::Plain,
            Mode::N1 => Sector::Ns,
        }
    }

    pub fn vacuum(self, c: HalfInt, prec: PrecisionPolicy) -> QSeries {
        match self {
            Mode::Svoa => modchar::virasoro_vacuum(c, prec),
            Mode::N1 => modchar::n1_vacuum(c, prec),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svoa" => Ok(Mode::Svoa),
            "n1" => Ok(Mode::N1),
            _ => Err(Error::Parse(format!("unknown mode '{s}' (expected svoa or n1)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Svoa => "svoa",
            Mode::N1 => "n1",
        })
    }
}

/// Tick of the leading shadow exponent `c/12 − k`.
pub fn shadow_tick(c: HalfInt, k: usize) -> i64 {
    2 * c.twice() - TICKS_PER_Q * k as i64
}

/// Affine function of the free basis coefficients, indexed by `r`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    constant: Scalar,
    coeffs: BTreeMap<usize, Scalar>,
}

impl LinearForm {
    pub fn constant(c: Scalar) -> Self {
        Self {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn var(index: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, Scalar::one());
        Self {
            constant: Scalar::zero(),
            coeffs,
        }
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn coefficient(&self, index: usize) -> Scalar {
        self.coeffs.get(&index).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, index: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(index).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (i, c) in &other.coeffs {
            out.add_term(*i, c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::default();
        }
        Self {
            constant: &self.constant * s,
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, c * s)).collect(),
        }
    }

    /// Value under `assignment`; unassigned parameters are an error.
    pub fn eval(&self, assignment: &BTreeMap<usize, BigInt>) -> Result<Scalar> {
        let mut v = self.constant.clone();
        for (i, c) in &self.coeffs {
            let x = assignment
                .get(i)
                .ok_or_else(|| Error::InvalidArgument(format!("parameter a{i} is unassigned")))?;
            v += &(c * &Scalar::from_bigint(x.clone()));
        }
        Ok(v)
    }

    /// Substitutes the given parameters, leaving the rest symbolic.
    pub fn partial_eval(&self, assignment: &BTreeMap<usize, BigInt>) -> Self {
        let mut out = Self::constant(self.constant.clone());
        for (i, c) in &self.coeffs {
            match assignment.get(i) {
                Some(x) => out.constant += &(c * &Scalar::from_bigint(x.clone())),
                None => out.add_term(*i, c),
            }
        }
        out
    }
}

fn write_scalar_term(f: &mut fmt::Formatter<'_>, c: &Scalar, first: bool) -> fmt::Result {
    if c.is_plain() {
        let r = c.rat();
        let neg = r.is_negative();
        if !first {
            f.write_str(if neg { " - " } else { " + " })?;
        } else if neg {
            f.write_str("-")?;
        }
        write!(f, "{}", r.abs())
    } else {
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "{c}")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            write_scalar_term(f, &self.constant, true)?;
            first = false;
        }
        for (i, c) in &self.coeffs {
            if c.is_plain() && c.rat().abs().is_one() {
                let neg = c.rat().is_negative();
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
            } else {
                write_scalar_term(f, c, first)?;
                f.write_str("*")?;
            }
            write!(f, "a{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// A series whose coefficients are [`LinearForm`]s: `base + Σ a_r·parts[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSeries {
    base: QSeries,
    parts: Vec<(usize, QSeries)>,
}

impl SymbolicSeries {
    pub fn concrete(base: QSeries) -> Self {
        Self {
            base,
            parts: Vec::new(),
        }
    }

    pub fn base(&self) -> &QSeries {
        &self.base
    }

    pub fn parts(&self) -> &[(usize, QSeries)] {
        &self.parts
    }

    pub fn free_parameters(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.0).collect()
    }

    pub fn prec_tick(&self) -> i64 {
        self.parts
            .iter()
            .map(|p| p.1.prec_tick())
            .fold(self.base.prec_tick(), i64::min)
    }

    /// Smallest tick with a possibly nonzero coefficient.
    pub fn min_tick(&self) -> i64 {
        self.parts
            .iter()
            .map(|p| p.1.min_tick())
            .fold(self.base.min_tick(), i64::min)
    }

    pub fn is_concrete(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn coefficient_at_tick(&self, tick: i64) -> Result<LinearForm> {
        if tick >= self.prec_tick() {
            return Err(Error::BeyondPrecision {
                tick,
                prec: self.prec_tick(),
            });
        }
        let mut lf = LinearForm::constant(self.base.coefficient_at_tick(tick)?);
        for (i, s) in &self.parts {
            lf.add_term(*i, &s.coefficient_at_tick(tick)?);
        }
        Ok(lf)
    }

    pub fn evaluate(&self, assignment: &BTreeMap<usize, BigInt>) -> Result<QSeries> {
        let mut out = self.base.clone();
        for (i, s) in &self.parts {
            let x = assignment
                .get(i)
                .ok_or_else(|| Error::InvalidArgument(format!("parameter a{i} is unassigned")))?;
            out = out.add(&s.scale(&Scalar::from_bigint(x.clone())));
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            base: self.base.scale(s),
            parts: self.parts.iter().map(|(i, p)| (*i, p.scale(s))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut parts: BTreeMap<usize, QSeries> = self.parts.iter().cloned().collect();
        for (i, p) in &other.parts {
            let e = match parts.remove(i) {
                Some(q) => q.sub(p),
                None => p.neg(),
            };
            parts.insert(*i, e);
        }
        Self {
            base: self.base.sub(&other.base),
            parts: parts.into_iter().collect(),
        }
    }

    /// Multiplies every component by the same concrete series.
    pub fn mul_series(&self, s: &QSeries) -> Self {
        Self {
            base: self.base.mul(s),
            parts: self.parts.iter().map(|(i, p)| (*i, p.mul(s))).collect(),
        }
    }

    pub fn is_plain(&self) -> bool {
        self.base.is_plain() && self.parts.iter().all(|p| p.1.is_plain())
    }
}

/// Powers `χ_{1/2}^{2c−24r}` and `(−1)^r α χ̃_{1/2}^{2c−24r}` for `r = 0..=k`.
#[derive(Clone, Debug)]
pub struct Basis {
    pub c: HalfInt,
    pub k: usize,
    pub chi_pows: Vec<QSeries>,
    pub shadow_pows: Vec<QSeries>,
}

impl Basis {
    pub fn exponent(c: HalfInt, r: usize) -> i64 {
        c.twice() - 24 * r as i64
    }

    /// Character terms are exact for `char_terms` ticks past `q^{-c/24}`,
    /// shadow terms for `shadow_terms` ticks past `q^{c/12−k}`.
    pub fn new(c: HalfInt, k: usize, char_terms: i64, shadow_terms: i64) -> Result<Self> {
        let chi = modchar::chi_half(PrecisionPolicy::new(char_terms.max(1))?);
        let tilde = modchar::chi_half_tilde(PrecisionPolicy::new(shadow_terms.max(1))?);
        let chi24 = chi.pow(24)?;
        let tilde24 = tilde.pow(24)?;
        let alpha = if c.is_integral() {
            Scalar::one()
        } else {
            Scalar::sqrt2_pow(-1)
        };

        let mut chi_pows = vec![chi.pow(Self::exponent(c, k))?];
        let mut shadow_pows = vec![tilde.pow(Self::exponent(c, k))?];
        for _ in 0..k {
            let next = chi_pows.last().unwrap().mul(&chi24);
            chi_pows.push(next);
            let next = shadow_pows.last().unwrap().mul(&tilde24);
            shadow_pows.push(next);
        }
        chi_pows.reverse();
        shadow_pows.reverse();
        let shadow_pows = shadow_pows
            .into_iter()
            .enumerate()
            .map(|(r, s)| {
                let sign = if r % 2 == 0 { alpha.clone() } else { -&alpha };
                s.scale(&sign)
            })
            .collect();
        Ok(Self {
            c,
            k,
            chi_pows,
            shadow_pows,
        })
    }

    fn combine(pows: &[QSeries], a: &[Scalar]) -> SymbolicSeries {
        let prec = pows.iter().map(QSeries::prec_tick).min().unwrap_or(0);
        let mut base = QSeries::zero(prec);
        for (r, coeff) in a.iter().enumerate() {
            if !coeff.is_zero() {
                base = base.add(&pows[r].scale(coeff));
            }
        }
        let parts = (a.len()..pows.len()).map(|r| (r, pows[r].clone())).collect();
        SymbolicSeries { base, parts }
    }

    pub fn character(&self, a: &[Scalar]) -> SymbolicSeries {
        Self::combine(&self.chi_pows, a)
    }

    pub fn shadow(&self, a: &[Scalar]) -> Result<SymbolicSeries> {
        let s = Self::combine(&self.shadow_pows, a);
        for series in std::iter::once(&s.base).chain(s.parts.iter().map(|p| &p.1)) {
            if let Some((t, _)) = series.nonzero_terms().find(|(_, c)| !c.is_plain()) {
                return Err(Error::IrrationalShadow(t));
            }
        }
        Ok(s)
    }

    /// Coefficient of basis element `r` at half-step `n` past `q^{-c/24}`.
    pub fn chi_coefficient(&self, r: usize, n: usize) -> Result<Scalar> {
        self.chi_pows[r].coefficient_at_tick(modchar::vacuum_tick(self.c) + 24 * n as i64)
    }
}

/// Central charge, mode and the determined prefix of `(a_0, …, a_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    pub c: HalfInt,
    pub mode: Mode,
    pub a: Vec<Scalar>,
}

impl CharacterSpec {
    pub fn new(c: HalfInt, mode: Mode, a: Vec<Scalar>) -> Result<Self> {
        if c.twice() <= 0 {
            return Err(Error::InvalidArgument(format!(
                "central charge must be positive, got {c}"
            )));
        }
        let k = mode.k(c);
        if a.len() > k + 1 {
            return Err(Error::TooManyTargets(a.len(), k + 1));
        }
        Ok(Self { c, mode, a })
    }

    pub fn k(&self) -> usize {
        self.mode.k(self.c)
    }

    /// Index of the first symbolic coefficient.
    pub fn free_from(&self) -> usize {
        self.a.len()
    }

    pub fn basis(&self, char_terms: i64, shadow_terms: i64) -> Result<Basis> {
        Basis::new(self.c, self.k(), char_terms, shadow_terms)
    }

    pub fn character(&self, prec: PrecisionPolicy) -> Result<SymbolicSeries> {
        Ok(self.basis(prec.terms(), 1)?.character(&self.a))
    }

    pub fn shadow(&self, prec: PrecisionPolicy) -> Result<SymbolicSeries> {
        self.basis(1, prec.terms())?.shadow(&self.a)
    }

    /// Rational values of the determined coefficients.
    pub fn a_rational(&self) -> Result<Vec<BigRational>> {
        self.a.iter().map(|x| x.as_rational().cloned()).collect()
    }
}

/// Solves the triangular system for `a_0, a_1, …` so that the character
/// starts `q^{-c/24}(t_0 + t_1 q^{1/2} + t_2 q + …)`.
pub fn fit_basis(c: HalfInt, mode: Mode, targets: &[Scalar]) -> Result<CharacterSpec> {
    let k = mode.k(c);
    if targets.len() > k + 1 {
        return Err(Error::TooManyTargets(targets.len(), k + 1));
    }
    let basis = Basis::new(c, k, 24 * targets.len().max(1) as i64, 1)?;
    fit_with_basis(&basis, mode, targets)
}

pub fn fit_with_basis(basis: &Basis, mode: Mode, targets: &[Scalar]) -> Result<CharacterSpec> {
    let mut a: Vec<Scalar> = Vec::with_capacity(targets.len());
    for (n, t) in targets.iter().enumerate() {
        let mut acc = t.clone();
        for (r, ar) in a.iter().enumerate() {
            acc -= &(ar * &basis.chi_coefficient(r, n)?);
        }
        // every basis power has leading coefficient 1
        a.push(acc);
    }
    CharacterSpec::new(basis.c, mode, a)
}

/// Coefficients of `series` at half-steps past `q^{-c/24}`.
pub fn half_step_coefficients(series: &QSeries, c: HalfInt, n: usize) -> Result<Vec<Scalar>> {
    let t0 = modchar::vacuum_tick(c);
    (0..n).map(|i| series.coefficient_at_tick(t0 + 24 * i as i64)).collect()
}

/// Highest-weight multiplicities by weight, extracted under the generic-Verma assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimarySeries {
    /// Weight in ticks (`h = tick/48`) to multiplicity; the vacuum sits at 0.
    pub multiplicities: BTreeMap<i64, Scalar>,
    /// Weights below this tick are determined.
    pub prec_tick: i64,
    /// Set when `c < 25`, where degenerate Verma modules make the extraction unreliable.
    pub heuristic: bool,
}

impl PrimarySeries {
    pub fn at(&self, h: &BigRational) -> Result<Scalar> {
        let t = crate::qseries::exponent_to_tick(h)?;
        if t >= self.prec_tick {
            return Err(Error::BeyondPrecision {
                tick: t,
                prec: self.prec_tick,
            });
        }
        Ok(self.multiplicities.get(&t).cloned().unwrap_or_default())
    }

    /// Nonzero multiplicities at positive weight, in increasing weight.
    pub fn positive(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.multiplicities
            .iter()
            .filter(|(t, c)| **t > 0 && !c.is_zero())
            .map(|(t, c)| (*t, c))
    }
}

/// Splits `chi` into the vacuum part and generic Verma characters.
///
/// Greedy subtraction of `q^{h−c/24}·∏(sector)` in increasing `h` is the same
/// as dividing the non-vacuum remainder by the sector product, which is how
/// it is computed.
pub fn primaries(chi: &QSeries, c: HalfInt, mode: Mode) -> Result<PrimarySeries> {
    for (_, x) in chi.nonzero_terms() {
        x.as_rational()?;
    }
    let t0 = modchar::vacuum_tick(c);
    let rel = chi.prec_tick() - t0;
    if rel <= 0 {
        return Err(Error::BeyondPrecision {
            tick: t0,
            prec: chi.prec_tick(),
        });
    }
    let prec = PrecisionPolicy::new(rel)?;
    let p0 = chi.coefficient_at_tick(t0)?;
    let rest = chi.sub(&mode.vacuum(c, prec).scale(&p0));
    let verma = modchar::verma_at_tick(0, mode.sector(), prec);
    let stripped = rest.mul(&verma.invert()?).truncate(chi.prec_tick());

    let mut multiplicities = BTreeMap::new();
    multiplicities.insert(0, p0);
    for (t, x) in stripped.nonzero_terms() {
        multiplicities.insert(t - t0, x.clone());
    }
    Ok(PrimarySeries {
        multiplicities,
        prec_tick: stripped.prec_tick() - t0,
        heuristic: c.twice() < 50,
    })
}

/// Even part (exponents ≡ −c/24 mod 1) and odd part.
pub fn even_odd_split(chi: &QSeries, c: HalfInt) -> (QSeries, QSeries) {
    let t0 = modchar::vacuum_tick(c);
    let even = chi.filter_ticks(|t| (t - t0).rem_euclid(TICKS_PER_Q) == 0);
    let odd = chi.filter_ticks(|t| (t - t0).rem_euclid(TICKS_PER_Q) != 0);
    (even, odd)
}

/// Rational value of a coefficient, for callers that have checked plainness.
pub fn rational(s: &Scalar) -> Result<BigRational> {
    s.as_rational().cloned()
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        rational_to_string(r)
    }
}
