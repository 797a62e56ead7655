//! Minimal-weight bounds and the theorem verifiers built on them.
//!
//! A hypothesis "μ(V) > μ" fixes the character through `q^{μ}` past the
//! vacuum to the Virasoro vacuum character. The remaining `a_r` are integer
//! unknowns, and nonnegativity and integrality of character and shadow
//! coefficients become affine constraints for the [`feasibility`] engine.
//!
//! [`feasibility`]: crate::feasibility

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{self, Assignment, Constraint, FeasibilityResult, Problem, SearchOptions, Status};
use crate::halfint::HalfInt;
use crate::modchar::{self, Sector};
use crate::qseries::reversion::{lagrange_coefficient, rebase};
use crate::qseries::{PrecisionPolicy, QSeries, Var, TICKS_PER_Q};
use crate::scalar::Scalar;
use crate::svoa::{fit_with_basis, half_step_coefficients, shadow_tick, Basis, CharacterSpec, Mode, SymbolicSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeasibilityOptions {
    /// Character coefficients checked past the fixed ones, in half-steps.
    pub char_depth: usize,
    /// Shadow coefficients checked past one per free parameter.
    pub shadow_depth: usize,
    pub enum_cap: u64,
    /// Also require nonnegative primary multiplicities.
    pub primary_check: bool,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        Self {
            char_depth: 16,
            shadow_depth: 8,
            enum_cap: 1_000_000,
            primary_check: false,
        }
    }
}

/// Extra requirements layered on a minimal-weight hypothesis.
#[derive(Clone, Debug, Default)]
pub struct Extra {
    /// `B_0 = 0`: the shadow has positive conformal weight.
    pub shadow_lead_zero: bool,
    /// Lower bounds `C_n ≥ v` on character coefficients.
    pub char_at_least: Vec<(usize, i64)>,
    pub find_all: bool,
}

/// The symbolic character and shadow behind a feasibility problem.
#[derive(Clone, Debug)]
pub struct Hypothesis {
    pub c: HalfInt,
    pub spec: CharacterSpec,
    pub character: SymbolicSeries,
    pub shadow: SymbolicSeries,
    pub problem: Problem,
}

fn check_c(c: HalfInt) -> Result<()> {
    if c.twice() <= 0 {
        return Err(Error::InvalidArgument(format!(
            "central charge must be positive, got {c}"
        )));
    }
    Ok(())
}

/// Builds the constraint system for "the character agrees with `targets`
/// and every checked coefficient is a nonnegative integer".
pub fn build_problem(c: HalfInt, targets: &[Scalar], extra: &Extra, opts: &FeasibilityOptions) -> Result<Hypothesis> {
    check_c(c)?;
    let mode = Mode::Svoa;
    let k = mode.k(c);
    let fitted = targets.len().min(k + 1);
    let free = k + 1 - fitted;
    let n_char = targets.len().max(k + 1) + opts.char_depth;
    let n_shadow = free + opts.shadow_depth;
    let basis = Basis::new(c, k, 24 * n_char as i64, TICKS_PER_Q * n_shadow as i64)?;
    let spec = fit_with_basis(&basis, mode, &targets[..fitted])?;
    let character = basis.character(&spec.a);
    let shadow = basis.shadow(&spec.a)?;
    let t0 = modchar::vacuum_tick(c);
    let s0 = shadow_tick(c, k);

    let mut constraints = Vec::new();
    for n in 0..n_char {
        let form = character.coefficient_at_tick(t0 + 24 * n as i64)?;
        if n < fitted {
            continue;
        }
        if n < targets.len() {
            constraints.push(Constraint::equal(
                format!("C{n} = {}", targets[n]),
                form,
                targets[n].as_rational()?.clone(),
            ));
            continue;
        }
        constraints.push(Constraint::at_least(format!("C{n} >= 0"), form.clone(), 0));
        constraints.push(Constraint::integral(format!("C{n} integral"), form));
    }
    for &(n, v) in &extra.char_at_least {
        let form = character.coefficient_at_tick(t0 + 24 * n as i64)?;
        constraints.push(Constraint::at_least(format!("C{n} >= {v}"), form, v));
    }
    for n in 0..n_shadow {
        let form = shadow.coefficient_at_tick(s0 + TICKS_PER_Q * n as i64)?;
        if n == 0 && extra.shadow_lead_zero {
            constraints.push(Constraint::equal("B0 = 0", form, BigRational::zero()));
            continue;
        }
        constraints.push(Constraint::at_least(format!("B{n} >= 0"), form.clone(), 0));
        constraints.push(Constraint::integral(format!("B{n} integral"), form));
    }
    if opts.primary_check {
        let prec = PrecisionPolicy::new(24 * n_char as i64)?;
        let vacuum = mode.vacuum(c, prec);
        let verma_inv = modchar::verma_at_tick(0, Sector::Plain, prec).invert()?;
        let stripped = character.sub(&SymbolicSeries::concrete(vacuum)).mul_series(&verma_inv);
        for n in 1..n_char {
            let form = stripped.coefficient_at_tick(t0 + 24 * n as i64)?;
            let h = HalfInt::from_twice(n as i64);
            constraints.push(Constraint::at_least(format!("P({h}) >= 0"), form, 0));
        }
    }
    let problem = Problem {
        vars: (fitted..=k).collect(),
        constraints,
        checked_depth: n_char + n_shadow,
    };
    Ok(Hypothesis {
        c,
        spec,
        character,
        shadow,
        problem,
    })
}

/// Vacuum coefficients at half-steps `0..=2μ`: the character of a theory
/// with `μ(V) > μ` agrees with the vacuum module that far.
pub fn vacuum_targets(c: HalfInt, mu: HalfInt) -> Result<Vec<Scalar>> {
    if mu.twice() < 0 {
        return Err(Error::InvalidArgument(format!("weight must be nonnegative, got {mu}")));
    }
    let n = mu.twice() as usize + 1;
    let vac = modchar::virasoro_vacuum(c, PrecisionPolicy::new(24 * n as i64)?);
    half_step_coefficients(&vac, c, n)
}

pub fn min_weight_hypothesis(c: HalfInt, mu: HalfInt, extra: &Extra, opts: &FeasibilityOptions) -> Result<Hypothesis> {
    build_problem(c, &vacuum_targets(c, mu)?, extra, opts)
}

fn run(h: &Hypothesis, extra: &Extra, opts: &FeasibilityOptions) -> Result<FeasibilityResult> {
    feasibility::solve(
        &h.problem,
        SearchOptions {
            enum_cap: opts.enum_cap,
            find_all: extra.find_all,
        },
    )
}

/// Decides whether a self-dual SVOA of central charge `c` can have `μ(V) > mu`.
pub fn test_min_weight_exceeds(c: HalfInt, mu: HalfInt, opts: &FeasibilityOptions) -> Result<FeasibilityResult> {
    let extra = Extra::default();
    let h = min_weight_hypothesis(c, mu, &extra, opts)?;
    run(&h, &extra, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Annotation {
    None,
    ClassificationDependent,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Annotation::None => "",
            Annotation::ClassificationDependent => "classification_dependent",
        })
    }
}

/// Central charges whose tabulated bound relies on the classification of
/// self-dual `c = 24` theories rather than on characters alone.
pub const CLASSIFICATION_DEPENDENT: [HalfInt; 7] = [
    HalfInt::from_twice(20),
    HalfInt::from_twice(22),
    HalfInt::from_twice(25),
    HalfInt::from_twice(26),
    HalfInt::from_twice(27),
    HalfInt::from_twice(29),
    HalfInt::from_twice(33),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub c: HalfInt,
    /// Smallest tested `μ` for which `μ(V) > μ` is infeasible.
    pub analytic_mu_max: Option<HalfInt>,
    pub annotation: Annotation,
    /// Every hypothesis tested, in increasing `μ`.
    pub verdicts: Vec<(HalfInt, Status)>,
    pub general_bound: HalfInt,
}

impl BoundReport {
    /// Infeasibility persists above the bound on the tested grid.
    pub fn is_monotone(&self) -> bool {
        let mut seen = false;
        for (_, s) in &self.verdicts {
            if *s == Status::Infeasible {
                seen = true;
            } else if seen {
                return false;
            }
        }
        true
    }
}

/// `⌊c/24⌋ + 1`, or `3/2` at `c = 23½`.
pub fn general_bound(c: HalfInt) -> HalfInt {
    if c == HalfInt::from_twice(47) {
        HalfInt::from_twice(3)
    } else {
        HalfInt::from_int(c.floor_div(24) + 1)
    }
}

pub fn analytic_mu_max(c: HalfInt, opts: &FeasibilityOptions) -> Result<BoundReport> {
    check_c(c)?;
    let half = HalfInt::from_twice(1);
    let start = general_bound(c);
    let mut verdicts = Vec::new();
    let mut test = |mu: HalfInt| -> Result<Status> {
        let s = test_min_weight_exceeds(c, mu, opts)?.status;
        verdicts.push((mu, s));
        Ok(s)
    };

    let mut bound = None;
    if test(start)? == Status::Infeasible {
        bound = Some(start);
        let mut mu = start;
        while mu > half {
            let lower = mu.add_half(-1);
            if test(lower)? != Status::Infeasible {
                break;
            }
            bound = Some(lower);
            mu = lower;
        }
        // one step above, as evidence of monotonicity
        test(start.add_half(1))?;
    } else {
        let mut mu = start;
        for _ in 0..4 {
            mu = mu.add_half(1);
            if test(mu)? == Status::Infeasible {
                bound = Some(mu);
                break;
            }
        }
    }
    verdicts.sort_by_key(|(mu, _)| *mu);
    let annotation = if CLASSIFICATION_DEPENDENT.contains(&c) {
        Annotation::ClassificationDependent
    } else {
        Annotation::None
    };
    Ok(BoundReport {
        c,
        analytic_mu_max: bound,
        annotation,
        verdicts,
        general_bound: general_bound(c),
    })
}

/// Bounds for `from, from + step, …, to`, computed in parallel and returned in order.
pub fn table(from: HalfInt, to: HalfInt, step: HalfInt, opts: &FeasibilityOptions) -> Result<Vec<BoundReport>> {
    if step.twice() <= 0 {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let cs: Vec<HalfInt> = (0..)
        .map(|i| HalfInt::from_twice(from.twice() + i * step.twice()))
        .take_while(|c| *c <= to)
        .collect();
    cs.par_iter().map(|&c| analytic_mu_max(c, opts)).collect()
}

// ---- odd weights above c/24 ----------------------------------------------

/// `μ(V) > c/24 + 1/2` together with a shadow of positive conformal weight.
///
/// Weight `c/24 + 1/2` itself is attained at `c = 24` by a theory with odd
/// part, so the hypothesis is strict.
pub fn verify_maxodd(c: HalfInt, opts: &FeasibilityOptions) -> Result<FeasibilityResult> {
    check_c(c)?;
    if !c.is_integral() || c.floor_div(24) * 48 != c.twice() {
        return Err(Error::InvalidArgument(format!("c must be a multiple of 24, got {c}")));
    }
    let mu = HalfInt::from_int(c.floor_div(24)).add_half(1);
    let extra = Extra {
        shadow_lead_zero: true,
        ..Extra::default()
    };
    let h = min_weight_hypothesis(c, mu, &extra, opts)?;
    run(&h, &extra, opts)
}

// ---- c = 48, minimal weight 5/2 ----------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub a: Vec<BigInt>,
    pub character: QSeries,
    pub shadow: QSeries,
}

#[derive(Clone, Debug)]
pub struct NeighbourReport {
    pub result: FeasibilityResult,
    pub families: Vec<Family>,
}

/// All characters at `c = 48` with `C_0 = 1`, `C_1 = … = C_4` as in the
/// vacuum, weight-5/2 states present, and nonnegative integral coefficients.
pub fn noneighbour_check(opts: &FeasibilityOptions) -> Result<NeighbourReport> {
    let c = HalfInt::from_int(48);
    let extra = Extra {
        char_at_least: vec![(5, 1)],
        find_all: true,
        ..Extra::default()
    };
    let targets = vacuum_targets(c, HalfInt::from_int(2))?;
    let h = build_problem(c, &targets, &extra, opts)?;
    let result = run(&h, &extra, opts)?;
    let families = result
        .solutions
        .iter()
        .map(|sol| family(&h, sol))
        .collect::<Result<Vec<_>>>()?;
    Ok(NeighbourReport { result, families })
}

fn family(h: &Hypothesis, sol: &Assignment) -> Result<Family> {
    let mut a = Vec::new();
    for (r, x) in h.spec.a.iter().enumerate() {
        let v = x.as_rational()?;
        if !v.is_integer() {
            return Err(Error::NotRational(format!("a{r} = {v} is not an integer")));
        }
        a.push(v.to_integer());
    }
    a.extend(sol.values().cloned());
    Ok(Family {
        a,
        character: h.character.evaluate(sol)?,
        shadow: h.shadow.evaluate(sol)?,
    })
}

// ---- the general bound ----------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaEntry {
    pub n: usize,
    pub rebase: Scalar,
    /// Bürmann–Lagrange value, available for `r ≥ 1`.
    pub lagrange: Option<Scalar>,
}

impl BetaEntry {
    pub fn positive(&self) -> bool {
        self.rebase.signum() == Ordering::Greater
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewboundReport {
    pub c: HalfInt,
    pub m: usize,
    pub k: usize,
    /// `48⌊c/24⌋ − 2c + 47`.
    pub exponent: i64,
    pub a2m_lagrange: Scalar,
    pub a2m_rebase: Scalar,
    pub a2m_fit: Scalar,
    /// `r = k − 2m`.
    pub r: usize,
    /// `β_{n,r}` for `n = 0..=3`.
    pub betas: Vec<BetaEntry>,
    pub beta00: Scalar,
    /// `β_{r,r}`, the coefficient of the leading shadow term in `a_{2m}`.
    pub beta_rr: Scalar,
    /// `2^{24⌊c/24⌋−c+24}`.
    pub beta00_formula: Scalar,
}

impl NewboundReport {
    pub fn exponent_ok(&self) -> bool {
        self.exponent >= 0
    }

    pub fn routes_agree(&self) -> bool {
        self.a2m_lagrange == self.a2m_rebase
            && self.a2m_rebase == self.a2m_fit
            && self
                .betas
                .iter()
                .all(|b| b.lagrange.as_ref().map_or(true, |l| *l == b.rebase))
    }

    pub fn a2m_negative(&self) -> bool {
        self.a2m_rebase.signum() == Ordering::Less
    }

    /// `β_{n,r} > 0` for `n ≤ r`, the terms that enter `a_{2m} = Σ β_{n,r} B_n`.
    pub fn betas_positive_where_used(&self) -> bool {
        self.betas.iter().filter(|b| b.n <= self.r).all(BetaEntry::positive)
    }

    /// `β_{n,r} > 0` for every computed `n`.
    pub fn betas_positive_all(&self) -> bool {
        self.betas.iter().all(BetaEntry::positive)
    }

    pub fn beta00_matches_formula(&self) -> bool {
        self.beta00 == self.beta00_formula
    }

    /// The closed form is `β_{r,r}`; it equals `β_{0,0}` only when `k = 2m`.
    pub fn beta_rr_matches_formula(&self) -> bool {
        self.beta_rr == self.beta00_formula
    }

    /// The checks the contradiction `a_{2m} < 0 ≤ a_{2m}` rests on.
    pub fn holds(&self) -> bool {
        self.exponent_ok() && self.routes_agree() && self.a2m_negative() && self.betas_positive_where_used()
    }
}

pub fn verify_newbound(c: HalfInt) -> Result<NewboundReport> {
    check_c(c)?;
    if c.twice() < 64 {
        return Err(Error::InvalidArgument(format!("needs c >= 32, got {c}")));
    }
    let m = (c.floor_div(24) + 1) as usize;
    let k = Mode::Svoa.k(c);
    let exponent = 48 * c.floor_div(24) - c.twice() + 47;
    let two_m = 2 * m;

    // a_{2m}: F = χ_M·χ^{−2c} in powers of φ = χ^{−24}
    let terms = 24 * (two_m as i64 + 2);
    let prec = PrecisionPolicy::new(terms)?;
    let chi = modchar::chi_half(prec);
    let f = modchar::virasoro_vacuum(c, prec).mul(&chi.pow(-c.twice())?);
    let phi = chi.pow(-24)?;
    let a2m_lagrange = lagrange_coefficient(&f, &phi, two_m, Var::P)?;
    let a2m_rebase = rebase(&f, &phi, two_m)?.pop().expect("nonempty");
    let targets = vacuum_targets(c, HalfInt::from_int(m as i64))?;
    let basis = Basis::new(c, k, terms, 1)?;
    let a2m_fit = fit_with_basis(&basis, Mode::Svoa, &targets)?.a[two_m].clone();

    // β_{n,r}: q^{n+c/12−k}·χ̃^{24k−2c} in powers of χ̃^{24}
    let r = k - two_m;
    let n_max = 3;
    let sprec = PrecisionPolicy::new(TICKS_PER_Q * (r.max(n_max) as i64 + 2))?;
    let tilde = modchar::chi_half_tilde(sprec);
    let phi_t = tilde.pow(24)?;
    let base = tilde.pow(24 * k as i64 - c.twice())?.shift(shadow_tick(c, k));
    let mut betas = Vec::new();
    let mut beta00 = Scalar::zero();
    let mut beta_rr = Scalar::zero();
    for n in 0..=n_max.max(r) {
        let fn_ = base.shift(TICKS_PER_Q * n as i64);
        let coeffs = rebase(&fn_, &phi_t, r.max(0))?;
        if n == 0 {
            beta00 = coeffs[0].clone();
        }
        let lagrange = if r >= 1 {
            Some(lagrange_coefficient(&fn_, &phi_t, r, Var::Q)?)
        } else {
            None
        };
        if n == r {
            beta_rr = coeffs[r].clone();
        }
        betas.push(BetaEntry {
            n,
            rebase: coeffs[r].clone(),
            lagrange,
        });
    }
    // 2^{24⌊c/24⌋ − c + 24} = (√2)^{48⌊c/24⌋ − 2c + 48}
    let beta00_formula = Scalar::sqrt2_pow(48 * c.floor_div(24) - c.twice() + 48);
    Ok(NewboundReport {
        c,
        m,
        k,
        exponent,
        a2m_lagrange,
        a2m_rebase,
        a2m_fit,
        r,
        betas,
        beta00,
        beta_rr,
        beta00_formula,
    })
}

// ---- coefficient positivity --------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffposReport {
    pub c: BigRational,
    pub n_max: usize,
    /// Indices `n < n_max` (powers of `p`) with a zero coefficient.
    pub zeros: Vec<usize>,
    /// First index with a negative coefficient.
    pub first_negative: Option<usize>,
    pub negative_count: usize,
}

impl CoeffposReport {
    pub fn first_nonpositive(&self) -> Option<usize> {
        match (self.zeros.first(), self.first_negative) {
            (Some(&z), Some(n)) => Some(z.min(n)),
            (z, n) => z.copied().or(n),
        }
    }

    pub fn all_positive(&self) -> bool {
        self.first_nonpositive().is_none()
    }

    /// Positive everywhere except at `p^1`, where the coefficient vanishes for every `c`.
    pub fn positive_apart_from_p1(&self) -> bool {
        self.first_negative.is_none() && self.zeros.iter().all(|&z| z == 1)
    }

    pub fn verdict(&self) -> String {
        if self.all_positive() {
            return "all positive".into();
        }
        if self.positive_apart_from_p1() {
            return "all positive except the coefficient of p^1, which is zero".into();
        }
        match (self.first_negative, self.zeros.iter().find(|&&z| z != 1)) {
            (Some(n), _) => format!("first negative coefficient at p^{n}"),
            (None, Some(z)) => format!("zero coefficient at p^{z}"),
            (None, None) => unreachable!(),
        }
    }
}

/// Integer coefficients of `∏ (1 + p^{2n+1})`, of `∏_{n≥2} (1 − p^{2n})^{-1}`,
/// and of their derivatives, through `p^{len−1}`.
fn lemma_series(len: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut a = vec![BigInt::zero(); len];
    a[0] = BigInt::one();
    let mut part = 1;
    while part < len {
        for i in (part..len).rev() {
            let x = a[i - part].clone();
            a[i] += x;
        }
        part += 2;
    }
    let mut b = vec![BigInt::zero(); len];
    b[0] = BigInt::one();
    let mut part = 4;
    while part < len {
        for i in part..len {
            let x = b[i - part].clone();
            b[i] += x;
        }
        part += 2;
    }
    (a, b)
}

fn derivative(v: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = v.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect();
    d.push(BigInt::zero());
    d
}

fn product(x: &[BigInt], y: &[BigInt], len: usize) -> Vec<BigInt> {
    (0..len)
        .into_par_iter()
        .map(|n| {
            let mut s = BigInt::zero();
            for i in 0..=n {
                if !x[i].is_zero() && !y[n - i].is_zero() {
                    s += &x[i] * &y[n - i];
                }
            }
            s
        })
        .collect()
}

/// `B·A'` and `B'·A` through `p^{len−1}`.
///
/// With `χ_{1/2} = p^{-1/24} A` and `χ_{M_c} = p^{-c/12} B`, the series
/// `2c·χ_{M_c}χ'_{1/2} − χ'_{M_c}χ_{1/2}` is `p^{-c/12−1/24}(2c·BA' − B'A)`:
/// the terms from differentiating the prefactors cancel.
pub fn lemma_parts(len: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let (a, b) = lemma_series(len + 1);
    let (da, db) = (derivative(&a), derivative(&b));
    (product(&b, &da, len), product(&db, &a, len))
}

pub fn verify_coeffpos(c: &BigRational, n_max: usize) -> Result<CoeffposReport> {
    if !c.is_positive() {
        return Err(Error::InvalidArgument("c must be positive".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let (ba, ab) = lemma_parts(n_max);
    Ok(coeffpos_from_parts(c, &ba, &ab))
}

/// Same as [`verify_coeffpos`] with `B·A'` and `B'·A` precomputed.
pub fn coeffpos_from_parts(c: &BigRational, ba: &[BigInt], ab: &[BigInt]) -> CoeffposReport {
    // sign of 2c·X − Y = sign of 2·num·X − den·Y
    let two_num = c.numer() * 2;
    let den = c.denom();
    let mut zeros = Vec::new();
    let mut first_negative = None;
    let mut negative_count = 0;
    for (n, (x, y)) in ba.iter().zip(ab).enumerate() {
        let v: BigInt = &two_num * x - den * y;
        match v.sign() {
            num_bigint::Sign::NoSign => zeros.push(n),
            num_bigint::Sign::Minus => {
                negative_count += 1;
                first_negative.get_or_insert(n);
            }
            num_bigint::Sign::Plus => {}
        }
    }
    CoeffposReport {
        c: c.clone(),
        n_max: ba.len(),
        zeros,
        first_negative,
        negative_count,
    }
}

// ---- N = 1 extremal characters ----------------------------------------------------

/// Character and shadow matching the N=1 vacuum through `q^{k/2}`, `k = ⌊c/12⌋`.
pub fn extremal_n1(c: HalfInt, prec: PrecisionPolicy) -> Result<(QSeries, QSeries)> {
    check_c(c)?;
    let k = Mode::N1.k(c);
    let char_terms = prec.terms().max(24 * (k as i64 + 1));
    let basis = Basis::new(c, k, char_terms, prec.terms())?;
    let vac = modchar::n1_vacuum(c, PrecisionPolicy::new(24 * (k as i64 + 1))?);
    let targets = half_step_coefficients(&vac, c, k + 1)?;
    let spec = fit_with_basis(&basis, Mode::N1, &targets)?;
    let chi = basis
        .character(&spec.a)
        .base()
        .truncate(modchar::vacuum_tick(c) + prec.terms());
    let shadow = basis.shadow(&spec.a)?.base().clone();
    Ok((chi, shadow))
}

/// Extremal character divided by the N=1 vacuum character.
pub fn n1_stripped(c: HalfInt, prec: PrecisionPolicy) -> Result<QSeries> {
    let (chi, _) = extremal_n1(c, prec)?;
    let vac = modchar::n1_vacuum(c, prec);
    Ok(chi.mul(&vac.invert()?).truncate(prec.terms()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N1BoundReport {
    pub c: HalfInt,
    pub k: usize,
    /// `23 − 2c + 24⌊c/12⌋`.
    pub exponent: i64,
    /// `A_{k+1}` from the closed formula.
    pub formula: Scalar,
    /// `−α_{k+1}` by Bürmann–Lagrange on `χ_{M^{N=1}}·χ^{−2c}`.
    pub lagrange: Scalar,
    /// Coefficient of `q^{(k+1)/2}` in the extremal character over the vacuum.
    pub stripped: Scalar,
    /// First nonzero coefficient of the stripped character past the constant term.
    pub first_nonzero: Option<(HalfInt, Scalar)>,
    pub shadow_leading: Scalar,
}

impl N1BoundReport {
    pub fn exponent_ok(&self) -> bool {
        self.exponent >= 0
    }

    pub fn routes_agree(&self) -> bool {
        self.formula == self.lagrange && self.lagrange == self.stripped
    }

    pub fn positive(&self) -> bool {
        self.formula.signum() == Ordering::Greater
    }

    pub fn is_exceptional(&self) -> bool {
        self.c == HalfInt::from_twice(47)
    }

    pub fn holds(&self) -> bool {
        self.exponent_ok() && self.routes_agree() && (self.positive() || self.is_exceptional())
    }
}

pub fn verify_n1_bound(c: HalfInt) -> Result<N1BoundReport> {
    check_c(c)?;
    let k = Mode::N1.k(c);
    let r = k + 1;
    let exponent = 23 - c.twice() + 24 * c.floor_div(12);
    let terms = 24 * (r as i64 + 4);
    let prec = PrecisionPolicy::new(terms)?;
    let chi = modchar::chi_half(prec);
    let vac = modchar::n1_vacuum(c, prec);

    // −(1/(k+1))·p^{k+1}·χ^{24(k+1)−2c−1}·[χ'_M χ − 2c χ_M χ'], coefficient of p^k
    let two_c = Scalar::from_int(c.twice());
    let bracket = vac
        .derivative(Var::P)
        .mul(&chi)
        .sub(&vac.mul(&chi.derivative(Var::P)).scale(&two_c));
    let expr = chi
        .pow(24 * r as i64 - c.twice() - 1)?
        .mul(&bracket)
        .shift(24 * r as i64);
    let formula = expr
        .coefficient_at_tick(24 * k as i64)?
        .scale(&BigRational::new((-1).into(), (r as i64).into()));

    let f = vac.mul(&chi.pow(-c.twice())?);
    let lagrange = -lagrange_coefficient(&f, &chi.pow(-24)?, r, Var::P)?;

    let sprec = PrecisionPolicy::new(terms)?;
    let stripped_series = n1_stripped(c, sprec)?;
    let stripped = stripped_series.coefficient_at_tick(24 * r as i64)?;
    let first_nonzero = stripped_series
        .nonzero_terms()
        .find(|(t, _)| *t > 0)
        .map(|(t, x)| (HalfInt::from_twice(t / 24), x.clone()));
    let (_, shadow) = extremal_n1(c, PrecisionPolicy::new(TICKS_PER_Q)?)?;
    let shadow_leading = shadow.coefficient_at_tick(shadow_tick(c, k))?;
    Ok(N1BoundReport {
        c,
        k,
        exponent,
        formula,
        lagrange,
        stripped,
        first_nonzero,
        shadow_leading,
    })
}
