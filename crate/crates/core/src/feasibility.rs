//! Integer feasibility over affine constraints with replayable certificates.
//!
//! Unknowns are integers. Constraints are affine forms required to be at
//! least a bound, equal to a value, or integral. The search is a depth-first
//! enumeration: at each node the still-free variables are bounded by exact
//! linear programs whose dual multipliers are kept as proof, integrality
//! constraints with a single free variable become congruences, and the
//! variable with the fewest candidates is branched on.
//!
//! Every pruned branch leaves a [`Step`] that [`Certificate::replay`] can
//! check with plain rational arithmetic, without re-running the search.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{rational_to_string, Scalar};
use crate::svoa::LinearForm;

pub type Assignment = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    AtLeast(BigRational),
    Equal(BigRational),
    Integral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub form: LinearForm,
    pub kind: ConstraintKind,
}

impl Constraint {
    pub fn at_least(label: impl Into<String>, form: LinearForm, bound: i64) -> Self {
        Self {
            label: label.into(),
            form,
            kind: ConstraintKind::AtLeast(BigRational::from_integer(bound.into())),
        }
    }

    pub fn equal(label: impl Into<String>, form: LinearForm, value: BigRational) -> Self {
        Self {
            label: label.into(),
            form,
            kind: ConstraintKind::Equal(value),
        }
    }

    pub fn integral(label: impl Into<String>, form: LinearForm) -> Self {
        Self {
            label: label.into(),
            form,
            kind: ConstraintKind::Integral,
        }
    }

    /// True if a constant value satisfies the constraint.
    pub fn holds_for(&self, v: &BigRational) -> bool {
        match &self.kind {
            ConstraintKind::AtLeast(b) => v >= b,
            ConstraintKind::Equal(b) => v == b,
            ConstraintKind::Integral => v.is_integer(),
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintKind::AtLeast(b) => write!(f, ">= {b}"),
            ConstraintKind::Equal(b) => write!(f, "= {b}"),
            ConstraintKind::Integral => write!(f, "integral"),
        }
    }
}

/// Affine form over ℚ in the free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct RForm {
    constant: BigRational,
    coeffs: BTreeMap<usize, BigRational>,
}

impl RForm {
    fn from_linear(lf: &LinearForm) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (i, c) in lf.terms() {
            coeffs.insert(i, c.as_rational()?.clone());
        }
        Ok(Self {
            constant: lf.constant_term().as_rational()?.clone(),
            coeffs,
        })
    }

    fn partial(&self, assignment: &Assignment) -> Self {
        let mut out = Self {
            constant: self.constant.clone(),
            coeffs: BTreeMap::new(),
        };
        for (i, c) in &self.coeffs {
            match assignment.get(i) {
                Some(x) => out.constant += c * BigRational::from_integer(x.clone()),
                None => {
                    out.coeffs.insert(*i, c.clone());
                }
            }
        }
        out
    }

    fn scaled_add(&mut self, other: &Self, s: &BigRational) {
        self.constant += &other.constant * s;
        for (i, c) in &other.coeffs {
            let e = self.coeffs.entry(*i).or_insert_with(BigRational::zero);
            *e += c * s;
            if e.is_zero() {
                self.coeffs.remove(i);
            }
        }
    }

    fn neg(&self) -> Self {
        Self {
            constant: -&self.constant,
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    fn shifted(&self, by: &BigRational) -> Self {
        Self {
            constant: &self.constant + by,
            coeffs: self.coeffs.clone(),
        }
    }
}

/// One inequality row `sign·(form − bound) ≥ 0` derived from a constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RowRef {
    pub constraint: usize,
    /// `+1` for `form ≥ bound`, `−1` for the upper half of an equality.
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// One machine-checkable deduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// A constraint whose variables are all fixed fails.
    Violation {
        constraint: usize,
        assignment: Assignment,
        value: BigRational,
    },
    /// `Σ y·row` equals `bound − x` (upper) or `x − bound` (lower).
    Bound {
        var: usize,
        side: Side,
        assignment: Assignment,
        multipliers: Vec<(RowRef, BigRational)>,
        bound: BigRational,
    },
    /// Integrality of a constraint with one free variable forces `x ≡ residue (mod modulus)`.
    Congruence {
        constraint: usize,
        var: usize,
        assignment: Assignment,
        modulus: BigInt,
        residue: BigInt,
    },
    /// Integrality of a constraint with one free variable cannot be met.
    NoCongruence {
        constraint: usize,
        var: usize,
        assignment: Assignment,
    },
    /// Congruences on one variable, each forced by integrality, with no common solution.
    Clash {
        var: usize,
        assignment: Assignment,
        congruences: Vec<(usize, BigInt, BigInt)>,
    },
    /// `Σ y·row` is a negative constant: the relaxation is empty.
    Farkas {
        assignment: Assignment,
        multipliers: Vec<(RowRef, BigRational)>,
        value: BigRational,
    },
    /// No integer in `[lower, upper]` meets the combined congruence.
    EmptyRange {
        var: usize,
        assignment: Assignment,
        lower: BigRational,
        upper: BigRational,
        modulus: BigInt,
        residue: BigInt,
    },
    /// Branching on `var` over the listed values, each refuted below.
    Branch {
        var: usize,
        assignment: Assignment,
        values: Vec<BigInt>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub constraints: Vec<Constraint>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Feasible,
    Infeasible,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Feasible => "Feasible",
            Status::Infeasible => "Infeasible",
            Status::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub status: Status,
    /// First solution found (all of them when enumerating).
    pub witness: Option<Assignment>,
    pub solutions: Vec<Assignment>,
    pub certificate: Option<Certificate>,
    /// Number of coefficients constrained.
    pub checked_depth: usize,
    pub nodes: u64,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub vars: Vec<usize>,
    pub constraints: Vec<Constraint>,
    pub checked_depth: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Total number of candidate values tried before giving up.
    pub enum_cap: u64,
    /// Collect every solution instead of stopping at the first.
    pub find_all: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            enum_cap: 1_000_000,
            find_all: false,
        }
    }
}

enum Outcome {
    Refuted,
    Found,
    GaveUp(String),
}

struct Search<'a> {
    rows: Vec<(RowRef, RForm)>,
    forms: Vec<RForm>,
    problem: &'a Problem,
    opts: SearchOptions,
    steps: Vec<Step>,
    solutions: Vec<Assignment>,
    budget: u64,
    nodes: u64,
}

pub fn solve(problem: &Problem, opts: SearchOptions) -> Result<FeasibilityResult> {
    let forms = problem
        .constraints
        .iter()
        .map(|c| RForm::from_linear(&c.form))
        .collect::<Result<Vec<_>>>()?;
    for f in &forms {
        if let Some(i) = f.coeffs.keys().find(|i| !problem.vars.contains(i)) {
            return Err(Error::InvalidArgument(format!(
                "constraint uses undeclared variable a{i}"
            )));
        }
    }
    let mut rows = Vec::new();
    for (idx, (c, f)) in problem.constraints.iter().zip(&forms).enumerate() {
        match &c.kind {
            ConstraintKind::AtLeast(b) => rows.push((
                RowRef {
                    constraint: idx,
                    sign: 1,
                },
                f.shifted(&-b),
            )),
            ConstraintKind::Equal(b) => {
                let g = f.shifted(&-b);
                rows.push((
                    RowRef {
                        constraint: idx,
                        sign: -1,
                    },
                    g.neg(),
                ));
                rows.push((
                    RowRef {
                        constraint: idx,
                        sign: 1,
                    },
                    g,
                ));
            }
            ConstraintKind::Integral => {}
        }
    }
    let mut s = Search {
        rows,
        forms,
        problem,
        opts,
        steps: Vec::new(),
        solutions: Vec::new(),
        budget: opts.enum_cap,
        nodes: 0,
    };
    let outcome = s.node(&Assignment::new());
    let (status, note) = match outcome {
        Outcome::GaveUp(why) => (Status::Inconclusive, Some(why)),
        _ if !s.solutions.is_empty() => (Status::Feasible, None),
        _ => (Status::Infeasible, None),
    };
    let certificate = (status == Status::Infeasible).then(|| Certificate {
        constraints: problem.constraints.clone(),
        steps: std::mem::take(&mut s.steps),
    });
    Ok(FeasibilityResult {
        status,
        witness: s.solutions.first().cloned(),
        solutions: s.solutions,
        certificate,
        checked_depth: problem.checked_depth,
        nodes: s.nodes,
        note,
    })
}

struct VarInfo {
    var: usize,
    lower: Option<(BigRational, Vec<(RowRef, BigRational)>)>,
    upper: Option<(BigRational, Vec<(RowRef, BigRational)>)>,
    congruences: Vec<(usize, BigInt, BigInt)>,
    modulus: BigInt,
    residue: BigInt,
    clash: Option<(usize, BigInt, BigInt)>,
}

/// Beyond this many candidates a congruence clash is reported instead of branching.
const CLASH_BRANCH_LIMIT: u64 = 64;

impl Search<'_> {
    fn node(&mut self, assignment: &Assignment) -> Outcome {
        self.nodes += 1;
        let free: Vec<usize> = self
            .problem
            .vars
            .iter()
            .copied()
            .filter(|v| !assignment.contains_key(v))
            .collect();

        // constraints that became constant
        for (idx, f) in self.forms.iter().enumerate() {
            let p = f.partial(assignment);
            if p.coeffs.is_empty() && !self.problem.constraints[idx].holds_for(&p.constant) {
                self.steps.push(Step::Violation {
                    constraint: idx,
                    assignment: assignment.clone(),
                    value: p.constant,
                });
                return Outcome::Refuted;
            }
        }
        if free.is_empty() {
            self.solutions.push(assignment.clone());
            return Outcome::Found;
        }

        let rows: Vec<(RowRef, RForm)> = self
            .rows
            .iter()
            .map(|(r, f)| (*r, f.partial(assignment)))
            .filter(|(_, f)| !f.coeffs.is_empty())
            .collect();

        if let Some((multipliers, value)) = farkas(&rows, &free) {
            self.steps.push(Step::Farkas {
                assignment: assignment.clone(),
                multipliers,
                value,
            });
            return Outcome::Refuted;
        }

        let mut best: Option<(BigInt, VarInfo)> = None;
        for &v in &free {
            let mut info = VarInfo {
                var: v,
                lower: bound(&rows, &free, v, Side::Lower),
                upper: bound(&rows, &free, v, Side::Upper),
                congruences: Vec::new(),
                modulus: BigInt::one(),
                residue: BigInt::zero(),
                clash: None,
            };
            for (idx, f) in self.forms.iter().enumerate() {
                if self.problem.constraints[idx].kind != ConstraintKind::Integral {
                    continue;
                }
                let p = f.partial(assignment);
                if p.coeffs.len() != 1 || !p.coeffs.contains_key(&v) {
                    continue;
                }
                match single_var_congruence(&p.constant, &p.coeffs[&v]) {
                    None => {
                        self.steps.push(Step::NoCongruence {
                            constraint: idx,
                            var: v,
                            assignment: assignment.clone(),
                        });
                        return Outcome::Refuted;
                    }
                    Some((m, r)) => {
                        if m.is_one() {
                            continue;
                        }
                        match crt(&info.residue, &info.modulus, &r, &m) {
                            // implied by the ones already collected
                            Some((_, m2)) if m2 == info.modulus => {}
                            Some((r2, m2)) => {
                                info.congruences.push((idx, m, r));
                                info.residue = r2;
                                info.modulus = m2;
                            }
                            None => {
                                if info.clash.is_none() {
                                    info.clash = Some((idx, m, r));
                                }
                            }
                        }
                    }
                }
            }
            let count = match (&info.lower, &info.upper) {
                (Some((lo, _)), Some((hi, _))) => Some(count_in_range(lo, hi, &info.modulus, &info.residue)),
                _ => None,
            };
            if info.clash.is_some() && count.as_ref().map_or(true, |c| *c > BigInt::from(CLASH_BRANCH_LIMIT)) {
                return self.clash(assignment, info);
            }
            let Some(count) = count else {
                continue;
            };
            if count.is_zero() {
                return self.empty_range(assignment, info);
            }
            if best.as_ref().map_or(true, |(c, _)| &count < c) {
                best = Some((count, info));
            }
        }

        let Some((count, info)) = best else {
            return Outcome::GaveUp(format!(
                "no bounded variable among {} after fixing {:?}",
                free.iter().map(|v| format!("a{v}")).collect::<Vec<_>>().join(", "),
                assignment
            ));
        };
        if count > BigInt::from(self.budget) {
            return Outcome::GaveUp(format!(
                "a{} has {count} candidates, more than the remaining enumeration budget",
                info.var
            ));
        }
        let lo = info.lower.as_ref().unwrap().0.clone();
        let hi = info.upper.as_ref().unwrap().0.clone();
        let values = candidates(&lo, &hi, &info.modulus, &info.residue);
        self.budget -= values.len() as u64;
        self.record_bounds(assignment, &info);
        self.steps.push(Step::Branch {
            var: info.var,
            assignment: assignment.clone(),
            values: values.clone(),
        });
        let mut found = false;
        for x in values {
            let mut next = assignment.clone();
            next.insert(info.var, x);
            match self.node(&next) {
                Outcome::Refuted => {}
                Outcome::Found => {
                    found = true;
                    if !self.opts.find_all {
                        return Outcome::Found;
                    }
                }
                g @ Outcome::GaveUp(_) => return g,
            }
        }
        if found {
            Outcome::Found
        } else {
            Outcome::Refuted
        }
    }

    fn record_bounds(&mut self, assignment: &Assignment, info: &VarInfo) {
        for (side, b) in [(Side::Lower, &info.lower), (Side::Upper, &info.upper)] {
            if let Some((bound, multipliers)) = b {
                self.steps.push(Step::Bound {
                    var: info.var,
                    side,
                    assignment: assignment.clone(),
                    multipliers: multipliers.clone(),
                    bound: bound.clone(),
                });
            }
        }
        for (idx, m, r) in &info.congruences {
            self.steps.push(Step::Congruence {
                constraint: *idx,
                var: info.var,
                assignment: assignment.clone(),
                modulus: m.clone(),
                residue: r.clone(),
            });
        }
    }

    fn clash(&mut self, assignment: &Assignment, info: VarInfo) -> Outcome {
        let mut congruences = info.congruences;
        congruences.extend(info.clash);
        self.steps.push(Step::Clash {
            var: info.var,
            assignment: assignment.clone(),
            congruences,
        });
        Outcome::Refuted
    }

    fn empty_range(&mut self, assignment: &Assignment, info: VarInfo) -> Outcome {
        self.record_bounds(assignment, &info);
        self.steps.push(Step::EmptyRange {
            var: info.var,
            assignment: assignment.clone(),
            lower: info.lower.unwrap().0,
            upper: info.upper.unwrap().0,
            modulus: info.modulus,
            residue: info.residue,
        });
        Outcome::Refuted
    }
}

/// Solutions of `c0 + c1·x ∈ ℤ` as `x ≡ r (mod m)`, or `None` if there are none.
fn single_var_congruence(c0: &BigRational, c1: &BigRational) -> Option<(BigInt, BigInt)> {
    let d = c0.denom().lcm(c1.denom());
    let a = c1.numer() * (&d / c1.denom());
    let b = c0.numer() * (&d / c0.denom());
    // a·x ≡ −b (mod d)
    let g = a.gcd(&d);
    if !(-&b).mod_floor(&g).is_zero() {
        return None;
    }
    let m = &d / &g;
    if m.is_one() {
        return Some((BigInt::one(), BigInt::zero()));
    }
    let a2 = (&a / &g).mod_floor(&m);
    let b2 = (-&b / &g).mod_floor(&m);
    let inv = mod_inverse(&a2, &m)?;
    Some((m.clone(), (b2 * inv).mod_floor(&m)))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Combines `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)`.
/// What earlier steps established about one variable at one node.
struct Facts {
    lower: Option<BigRational>,
    upper: Option<BigRational>,
    modulus: BigInt,
    residue: BigInt,
}

impl Facts {
    fn range(&self) -> std::result::Result<(&BigRational, &BigRational), String> {
        match (&self.lower, &self.upper) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err("range is not bounded on both sides by earlier steps".into()),
        }
    }
}

fn track(step: &Step, facts: &mut BTreeMap<(usize, Assignment), Facts>) -> std::result::Result<(), String> {
    let entry = |facts: &mut BTreeMap<(usize, Assignment), Facts>, var: usize, a: &Assignment| {
        facts.remove(&(var, a.clone())).unwrap_or(Facts {
            lower: None,
            upper: None,
            modulus: BigInt::one(),
            residue: BigInt::zero(),
        })
    };
    match step {
        Step::Bound {
            var,
            side,
            assignment,
            bound,
            ..
        } => {
            let mut f = entry(facts, *var, assignment);
            match side {
                Side::Lower => f.lower = Some(f.lower.map_or(bound.clone(), |b| b.max(bound.clone()))),
                Side::Upper => f.upper = Some(f.upper.map_or(bound.clone(), |b| b.min(bound.clone()))),
            }
            facts.insert((*var, assignment.clone()), f);
        }
        Step::Congruence {
            var,
            assignment,
            modulus,
            residue,
            ..
        } => {
            let mut f = entry(facts, *var, assignment);
            let (r, m) = crt(&f.residue, &f.modulus, residue, modulus)
                .ok_or("incompatible congruences recorded outside a clash step")?;
            (f.residue, f.modulus) = (r, m);
            facts.insert((*var, assignment.clone()), f);
        }
        Step::Branch {
            var,
            assignment,
            values,
        } => {
            let f = facts
                .get(&(*var, assignment.clone()))
                .ok_or("branch without recorded bounds")?;
            let (lo, hi) = f.range()?;
            if &candidates(lo, hi, &f.modulus, &f.residue) != values {
                return Err(format!("branch values on a{var} differ from the admissible range"));
            }
        }
        Step::EmptyRange { var, assignment, .. } => {
            let f = facts
                .get(&(*var, assignment.clone()))
                .ok_or("empty range without recorded bounds")?;
            let (lo, hi) = f.range()?;
            if !count_in_range(lo, hi, &f.modulus, &f.residue).is_zero() {
                return Err(format!("recorded facts leave admissible values for a{var}"));
            }
        }
        _ => {}
    }
    Ok(())
}

fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let g = m1.gcd(m2);
    let diff = r2 - r1;
    if !diff.mod_floor(&g).is_zero() {
        return None;
    }
    let l = m1 / &g * m2;
    let m1g = m1 / &g;
    let m2g = m2 / &g;
    let k = if m2g.is_one() {
        BigInt::zero()
    } else {
        ((&diff / &g).mod_floor(&m2g) * mod_inverse(&m1g.mod_floor(&m2g), &m2g)?).mod_floor(&m2g)
    };
    Some(((r1 + m1 * k).mod_floor(&l), l))
}

fn ceil(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

fn floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Smallest `x ≥ lo` with `x ≡ r (mod m)`.
fn first_at_or_above(lo: &BigInt, m: &BigInt, r: &BigInt) -> BigInt {
    lo + (r - lo).mod_floor(m)
}

fn count_in_range(lo: &BigRational, hi: &BigRational, m: &BigInt, r: &BigInt) -> BigInt {
    let (lo, hi) = (ceil(lo), floor(hi));
    if lo > hi {
        return BigInt::zero();
    }
    let first = first_at_or_above(&lo, m, r);
    if first > hi {
        BigInt::zero()
    } else {
        (hi - first) / m + 1
    }
}

fn candidates(lo: &BigRational, hi: &BigRational, m: &BigInt, r: &BigInt) -> Vec<BigInt> {
    let hi = floor(hi);
    let mut x = first_at_or_above(&ceil(lo), m, r);
    let mut out = Vec::new();
    while x <= hi {
        out.push(x.clone());
        x += m;
    }
    out
}

/// Looks for `y ≥ 0` with `Σ y·row` a negative constant.
fn farkas(rows: &[(RowRef, RForm)], free: &[usize]) -> Option<(Vec<(RowRef, BigRational)>, BigRational)> {
    if rows.is_empty() {
        return None;
    }
    // Σ y_i a_i = 0 for each free variable, Σ y_i b_i = −1
    let mut m: Vec<Vec<BigRational>> = free
        .iter()
        .map(|v| {
            rows.iter()
                .map(|(_, f)| f.coeffs.get(v).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let mut t = vec![BigRational::zero(); free.len()];
    m.push(rows.iter().map(|(_, f)| f.constant.clone()).collect());
    t.push(-BigRational::one());
    let cost = vec![BigRational::zero(); rows.len()];
    match simplex::minimize(&m, &t, &cost) {
        simplex::LpResult::Optimal { y, .. } => Some((sparse(rows, &y), -BigRational::one())),
        _ => None,
    }
}

/// Best bound on `var` with its dual multipliers, or `None` if unbounded on that side.
fn bound(
    rows: &[(RowRef, RForm)],
    free: &[usize],
    var: usize,
    side: Side,
) -> Option<(BigRational, Vec<(RowRef, BigRational)>)> {
    if rows.is_empty() {
        return None;
    }
    // Σ y_i a_i = −e_var (upper) or +e_var (lower); minimize Σ y_i b_i
    let target_sign = match side {
        Side::Upper => -BigRational::one(),
        Side::Lower => BigRational::one(),
    };
    let m: Vec<Vec<BigRational>> = free
        .iter()
        .map(|v| {
            rows.iter()
                .map(|(_, f)| f.coeffs.get(v).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let t: Vec<BigRational> = free
        .iter()
        .map(|v| {
            if *v == var {
                target_sign.clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let cost: Vec<BigRational> = rows.iter().map(|(_, f)| f.constant.clone()).collect();
    match simplex::minimize(&m, &t, &cost) {
        simplex::LpResult::Optimal { y, value } => {
            let b = match side {
                Side::Upper => value,
                Side::Lower => -value,
            };
            Some((b, sparse(rows, &y)))
        }
        _ => None,
    }
}

fn sparse(rows: &[(RowRef, RForm)], y: &[BigRational]) -> Vec<(RowRef, BigRational)> {
    rows.iter()
        .zip(y)
        .filter(|(_, v)| !v.is_zero())
        .map(|((r, _), v)| (*r, v.clone()))
        .collect()
}

impl Certificate {
    fn row_form(&self, r: &RowRef) -> std::result::Result<RForm, String> {
        let c = self
            .constraints
            .get(r.constraint)
            .ok_or_else(|| format!("row cites missing constraint {}", r.constraint))?;
        let f = RForm::from_linear(&c.form).map_err(|e| e.to_string())?;
        let b = match &c.kind {
            ConstraintKind::AtLeast(b) if r.sign == 1 => b,
            ConstraintKind::Equal(b) => b,
            _ => return Err(format!("row {r:?} does not come from an inequality")),
        };
        let g = f.shifted(&-b);
        Ok(if r.sign == 1 { g } else { g.neg() })
    }

    fn combination(
        &self,
        multipliers: &[(RowRef, BigRational)],
        assignment: &Assignment,
    ) -> std::result::Result<RForm, String> {
        let mut acc = RForm::default();
        for (r, y) in multipliers {
            if y.is_negative() {
                return Err("negative multiplier".into());
            }
            acc.scaled_add(&self.row_form(r)?.partial(assignment), y);
        }
        Ok(acc)
    }

    fn form(&self, idx: usize) -> std::result::Result<RForm, String> {
        let c = self
            .constraints
            .get(idx)
            .ok_or_else(|| format!("step cites missing constraint {idx}"))?;
        RForm::from_linear(&c.form).map_err(|e| e.to_string())
    }

    /// Re-checks every step with exact arithmetic. Branch and empty-range
    /// steps must follow from bounds and congruences recorded before them.
    pub fn replay(&self) -> std::result::Result<(), String> {
        let mut facts = BTreeMap::new();
        for (n, step) in self.steps.iter().enumerate() {
            self.replay_step(step)
                .and_then(|()| track(step, &mut facts))
                .map_err(|e| format!("step {n}: {e}"))?;
        }
        Ok(())
    }

    fn replay_step(&self, step: &Step) -> std::result::Result<(), String> {
        match step {
            Step::Violation {
                constraint,
                assignment,
                value,
            } => {
                let p = self.form(*constraint)?.partial(assignment);
                if !p.coeffs.is_empty() {
                    return Err("violation cites a form that is not fully determined".into());
                }
                if &p.constant != value {
                    return Err(format!("recorded value {value}, recomputed {}", p.constant));
                }
                if self.constraints[*constraint].holds_for(value) {
                    return Err("recorded violation actually holds".into());
                }
                Ok(())
            }
            Step::Bound {
                var,
                side,
                assignment,
                multipliers,
                bound,
            } => {
                let acc = self.combination(multipliers, assignment)?;
                let mut expect = RForm::default();
                let one = BigRational::one();
                match side {
                    Side::Upper => {
                        expect.constant = bound.clone();
                        expect.coeffs.insert(*var, -one);
                    }
                    Side::Lower => {
                        expect.constant = -bound;
                        expect.coeffs.insert(*var, one);
                    }
                }
                if acc != expect {
                    return Err(format!("multipliers do not produce the {side:?} bound on a{var}"));
                }
                Ok(())
            }
            Step::Congruence {
                constraint,
                var,
                assignment,
                modulus,
                residue,
            } => {
                let p = self.form(*constraint)?.partial(assignment);
                let c1 = p.coeffs.get(var).ok_or("congruence variable absent")?;
                if p.coeffs.len() != 1 {
                    return Err("congruence form has more than one free variable".into());
                }
                match single_var_congruence(&p.constant, c1) {
                    Some((m, r)) if &m == modulus && &r == residue => Ok(()),
                    _ => Err("recorded congruence does not match".into()),
                }
            }
            Step::NoCongruence {
                constraint,
                var,
                assignment,
            } => {
                let p = self.form(*constraint)?.partial(assignment);
                let c1 = p.coeffs.get(var).ok_or("congruence variable absent")?;
                if p.coeffs.len() == 1 && single_var_congruence(&p.constant, c1).is_none() {
                    Ok(())
                } else {
                    Err("constraint admits integral values".into())
                }
            }
            Step::Clash {
                var,
                assignment,
                congruences,
            } => {
                let (mut m0, mut r0) = (BigInt::one(), BigInt::zero());
                for (idx, m, r) in congruences {
                    self.replay_step(&Step::Congruence {
                        constraint: *idx,
                        var: *var,
                        assignment: assignment.clone(),
                        modulus: m.clone(),
                        residue: r.clone(),
                    })?;
                    match crt(&r0, &m0, r, m) {
                        Some((r1, m1)) => (r0, m0) = (r1, m1),
                        None => return Ok(()),
                    }
                }
                Err("congruences are compatible".into())
            }
            Step::Farkas {
                assignment,
                multipliers,
                value,
            } => {
                let acc = self.combination(multipliers, assignment)?;
                if !acc.coeffs.is_empty() || &acc.constant != value || !value.is_negative() {
                    return Err("multipliers do not give a negative constant".into());
                }
                Ok(())
            }
            Step::EmptyRange {
                lower,
                upper,
                modulus,
                residue,
                ..
            } => {
                if count_in_range(lower, upper, modulus, residue).is_zero() {
                    Ok(())
                } else {
                    Err("range contains an admissible integer".into())
                }
            }
            Step::Branch { .. } => Ok(()),
        }
    }

    /// Human-readable account of the steps.
    pub fn narrate(&self) -> Vec<String> {
        self.steps.iter().filter_map(|s| self.narrate_step(s)).collect()
    }

    fn narrate_step(&self, step: &Step) -> Option<String> {
        let label = |i: &usize| self.constraints[*i].label.clone();
        Some(match step {
            Step::Violation {
                constraint,
                assignment,
                value,
            } => format!(
                "{}{}: {} = {} violates {}",
                fmt_assignment(assignment),
                label(constraint),
                self.constraints[*constraint].form,
                fmt_rational(value),
                self.constraints[*constraint].kind
            ),
            Step::Bound {
                var,
                side,
                assignment,
                multipliers,
                bound,
            } => {
                let cited: Vec<String> = multipliers.iter().map(|(r, _)| label(&r.constraint)).collect();
                let (op, b) = match side {
                    Side::Lower => (">=", ceil(bound)),
                    Side::Upper => ("<=", floor(bound)),
                };
                format!(
                    "{}a{var} {op} {b} from {}",
                    fmt_assignment(assignment),
                    cited.join(" + ")
                )
            }
            Step::Congruence {
                constraint,
                var,
                assignment,
                modulus,
                residue,
            } => format!(
                "{}{} forces a{var} = {residue} mod {modulus}",
                fmt_assignment(assignment),
                label(constraint)
            ),
            Step::NoCongruence {
                constraint,
                var,
                assignment,
            } => format!(
                "{}{} cannot be integral for any integer a{var}",
                fmt_assignment(assignment),
                label(constraint)
            ),
            Step::Clash {
                var,
                assignment,
                congruences,
            } => {
                let parts: Vec<String> = congruences
                    .iter()
                    .map(|(i, m, r)| format!("{} forces a{var} = {r} mod {m}", label(i)))
                    .collect();
                format!("{}{}, incompatible", fmt_assignment(assignment), parts.join("; "))
            }
            Step::Farkas {
                assignment,
                multipliers,
                ..
            } => {
                let cited: Vec<String> = multipliers.iter().map(|(r, _)| label(&r.constraint)).collect();
                format!("{}contradiction from {}", fmt_assignment(assignment), cited.join(" + "))
            }
            Step::EmptyRange { var, assignment, .. } => {
                format!("{}no admissible value of a{var} remains", fmt_assignment(assignment))
            }
            Step::Branch {
                var,
                assignment,
                values,
            } => {
                let shown: Vec<String> = values.iter().take(8).map(|v| v.to_string()).collect();
                let more = if values.len() > 8 { ", ..." } else { "" };
                format!("{}a{var} in {{{}{more}}}", fmt_assignment(assignment), shown.join(", "))
            }
        })
    }
}

fn fmt_assignment(a: &Assignment) -> String {
    if a.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = a.iter().map(|(i, v)| format!("a{i}={v}")).collect();
        format!("[{}] ", parts.join(", "))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        rational_to_string(r)
    }
}

// ---- serialization -------------------------------------------------------

struct Rat<'a>(&'a BigRational);

impl Serialize for Rat<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(self.0))
    }
}

struct Asg<'a>(&'a Assignment);

impl Serialize for Asg<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(&format!("a{k}"), &v.to_string())?;
        }
        m.end()
    }
}

struct Mults<'a>(&'a [(RowRef, BigRational)]);

impl Serialize for Mults<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (r, y) in self.0 {
            seq.serialize_element(&(r.constraint, r.sign, rational_to_string(y)))?;
        }
        seq.end()
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rational_to_string(self.rat()), rational_to_string(self.sqrt2_part())].serialize(s)
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("constant", self.constant_term())?;
        for (i, c) in self.terms() {
            m.serialize_entry(&format!("a{i}"), c)?;
        }
        m.end()
    }
}

impl Serialize for Constraint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Constraint", 4)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("form", &self.form)?;
        st.serialize_field("text", &self.form.to_string())?;
        let kind = match &self.kind {
            ConstraintKind::AtLeast(b) => format!(">= {}", rational_to_string(b)),
            ConstraintKind::Equal(b) => format!("= {}", rational_to_string(b)),
            ConstraintKind::Integral => "integral".to_string(),
        };
        st.serialize_field("kind", &kind)?;
        st.end()
    }
}

impl Serialize for Step {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            Step::Violation {
                constraint,
                assignment,
                value,
            } => {
                m.serialize_entry("step", "violation")?;
                m.serialize_entry("constraint", constraint)?;
                m.serialize_entry("assignment", &Asg(assignment))?;
                m.serialize_entry("value", &Rat(value))?;
            }
            Step::Bound {
                var,
                side,
                assignment,
                multipliers,
                bound,
            } => {
                m.serialize_entry("step", "bound")?;
                m.serialize_entry("var", &format!("a{var}"))?;
                m.serialize_entry("side", side)?;
                m.serialize_entry("assignment", &Asg(assignment))?;
                m.serialize_entry("multipliers", &Mults(multipliers))?;
                m.serialize_entry("bound", &Rat(bound))?;
            }
            Step::Congruence {
                constraint,
                var,
                assignment,
                modulus,
                residue,
            } => {
                m.serialize_entry("step", "congruence")?;
                m.serialize_entry("constraint", constraint)?;
                m.serialize_entry("var", &format!("a{var}"))?;
                m.serialize_entry("assignment", &Asg(assignment))?;
                m.serialize_entry("modulus", &modulus.to_string())?;
                m.serialize_entry("residue", &residue.to_string())?;
            }
            Step::NoCongruence {
                constraint,
                var,
                assignment,
            } => {
                m.serialize_entry("step", "no_congruence")?;
                m.serialize_entry("constraint", constraint)?;
                m.serialize_entry("var", &format!("a{var}"))?;
                m.serialize_entry("assignment", &Asg(assignment))?;
            }
            Step::Clash {
                var,
                assignment,
                congruences,
            } => {
                m.serialize_entry("step", "clash")?;
                m.serialize_entry("var", &format!("a{var}"))?;
                m.serialize_entry("assignment", &Asg(assignment))?;
                let cs: Vec<(usize, String, String)> = congruences
                    .iter()
                    .map(|(i, m, r)| (*i, m.to_string(), r.to_string()))
                    .collect();
                m.serialize_entry("congruences", &cs)?;
            }
            Step::Farkas {
                assignment,
                multipliers,
                value,
            } => {
                m.serialize_entry("step", "farkas")?;
                m.serialize_entry("assignment", &Asg(assignment))?;
                m.serialize_entry("multipliers", &Mults(multipliers))?;
                m.serialize_entry("value", &Rat(value))?;
            }
            Step::EmptyRange {
                var,
                assignment,
                lower,
                upper,
                modulus,
                residue,
            } => {
                m.serialize_entry("step", "empty_range")?;
                m.serialize_entry("var", &format!("a{var}"))?;
                m.serialize_entry("assignment", &Asg(assignment))?;
                m.serialize_entry("lower", &Rat(lower))?;
                m.serialize_entry("upper", &Rat(upper))?;
                m.serialize_entry("modulus", &modulus.to_string())?;
                m.serialize_entry("residue", &residue.to_string())?;
            }
            Step::Branch {
                var,
                assignment,
                values,
            } => {
                m.serialize_entry("step", "branch")?;
                m.serialize_entry("var", &format!("a{var}"))?;
                m.serialize_entry("assignment", &Asg(assignment))?;
                let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                m.serialize_entry("values", &vals)?;
            }
        }
        m.end()
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Certificate", 3)?;
        st.serialize_field("constraints", &self.constraints)?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("narrative", &self.narrate())?;
        st.end()
    }
}

impl Serialize for FeasibilityResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FeasibilityResult", 7)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("witness", &self.witness.as_ref().map(Asg))?;
        let sols: Vec<Asg> = self.solutions.iter().map(Asg).collect();
        st.serialize_field("solutions", &sols)?;
        st.serialize_field("certificate", &self.certificate)?;
        st.serialize_field("checked_depth", &self.checked_depth)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.serialize_field("note", &self.note)?;
        st.end()
    }
}

/// Ratio of two integers as `f64`, for display of very large enumeration counts.
pub fn approx(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

pub mod simplex {
    //! Exact two-phase simplex with Bland's rule for `min c·y, M y = t, y ≥ 0`.

    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub enum LpResult {
        Optimal { y: Vec<BigRational>, value: BigRational },
        Infeasible,
        Unbounded,
    }

    struct Tableau {
        a: Vec<Vec<BigRational>>,
        rhs: Vec<BigRational>,
        basis: Vec<usize>,
    }

    impl Tableau {
        fn pivot(&mut self, row: usize, col: usize) {
            let p = self.a[row][col].clone();
            for x in self.a[row].iter_mut() {
                *x = &*x / &p;
            }
            self.rhs[row] = &self.rhs[row] / &p;
            for r in 0..self.a.len() {
                if r == row || self.a[r][col].is_zero() {
                    continue;
                }
                let f = self.a[r][col].clone();
                for c in 0..self.a[r].len() {
                    if !self.a[row][c].is_zero() {
                        let d = &f * &self.a[row][c];
                        self.a[r][c] -= d;
                    }
                }
                let d = &f * &self.rhs[row];
                self.rhs[r] -= d;
            }
            self.basis[row] = col;
        }

        /// Minimizes `cost` over columns `0..ncols`; returns false if unbounded.
        fn optimize(&mut self, cost: &[BigRational], ncols: usize) -> bool {
            loop {
                // reduced cost c_j − c_B B^{-1} A_j, Bland: first improving column
                let mut entering = None;
                for j in 0..ncols {
                    if self.basis.contains(&j) {
                        continue;
                    }
                    let mut red = cost[j].clone();
                    for (r, &b) in self.basis.iter().enumerate() {
                        if !self.a[r][j].is_zero() && !cost[b].is_zero() {
                            red -= &cost[b] * &self.a[r][j];
                        }
                    }
                    if red.is_negative() {
                        entering = Some(j);
                        break;
                    }
                }
                let Some(col) = entering else {
                    return true;
                };
                let mut leave: Option<(usize, BigRational)> = None;
                for r in 0..self.a.len() {
                    if self.a[r][col].is_positive() {
                        let ratio = &self.rhs[r] / &self.a[r][col];
                        let better = match &leave {
                            None => true,
                            Some((lr, lv)) => ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr]),
                        };
                        if better {
                            leave = Some((r, ratio));
                        }
                    }
                }
                let Some((row, _)) = leave else {
                    return false;
                };
                self.pivot(row, col);
            }
        }
    }

    pub fn minimize(m: &[Vec<BigRational>], t: &[BigRational], cost: &[BigRational]) -> LpResult {
        let rows = m.len();
        let n = cost.len();
        let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
        let mut rhs = Vec::with_capacity(rows);
        for (i, row) in m.iter().enumerate() {
            let flip = t[i].is_negative();
            let mut r: Vec<BigRational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
            r.extend((0..rows).map(|k| {
                if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            a.push(r);
            rhs.push(if flip { -&t[i] } else { t[i].clone() });
        }
        let mut tab = Tableau {
            a,
            rhs,
            basis: (n..n + rows).collect(),
        };
        let mut phase1 = vec![BigRational::zero(); n + rows];
        for c in phase1.iter_mut().skip(n) {
            *c = BigRational::one();
        }
        tab.optimize(&phase1, n + rows);
        let infeasibility: BigRational = tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .filter(|(b, _)| **b >= n)
            .map(|(_, v)| v.clone())
            .fold(BigRational::zero(), |acc, v| acc + v);
        if infeasibility.is_positive() {
            return LpResult::Infeasible;
        }
        // drive remaining artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < tab.a.len() {
            if tab.basis[r] >= n {
                match (0..n).find(|&j| !tab.a[r][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        tab.a.remove(r);
                        tab.rhs.remove(r);
                        tab.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        let mut full_cost = cost.to_vec();
        full_cost.extend((0..rows).map(|_| BigRational::zero()));
        if !tab.optimize(&full_cost, n) {
            return LpResult::Unbounded;
        }
        let mut y = vec![BigRational::zero(); n];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < n {
                y[b] = tab.rhs[r].clone();
            }
        }
        let value = y.iter().zip(cost).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
        LpResult::Optimal { y, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize, c: i64) -> LinearForm {
        let mut lf = LinearForm::default();
        lf.add_term(i, &Scalar::from_int(c));
        lf
    }

    fn plus(mut lf: LinearForm, k: BigRational) -> LinearForm {
        lf = lf.add(&LinearForm::constant(Scalar::from_rational(k)));
        lf
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simplex_small() {
        // min y0 + y1, y0 − y1 = 1
        let m = vec![vec![r(1, 1), r(-1, 1)]];
        let res = simplex::minimize(&m, &[r(1, 1)], &[r(1, 1), r(1, 1)]);
        assert_eq!(
            res,
            simplex::LpResult::Optimal {
                y: vec![r(1, 1), r(0, 1)],
                value: r(1, 1)
            }
        );
        assert_eq!(
            simplex::minimize(&m, &[r(1, 1)], &[r(-1, 1), r(-1, 1)]),
            simplex::LpResult::Unbounded
        );
        let m = vec![vec![r(1, 1), r(1, 1)]];
        assert_eq!(
            simplex::minimize(&m, &[r(-1, 1)], &[r(0, 1), r(0, 1)]),
            simplex::LpResult::Infeasible
        );
    }

    #[test]
    fn congruences() {
        // x/32768 integral → x ≡ 0 mod 32768
        assert_eq!(
            single_var_congruence(&r(0, 1), &r(1, 32768)),
            Some((BigInt::from(32768), BigInt::zero()))
        );
        // 1/2 + x/2 integral → x odd
        assert_eq!(
            single_var_congruence(&r(1, 2), &r(1, 2)),
            Some((BigInt::from(2), BigInt::one()))
        );
        // 1/2 + x integral: impossible
        assert_eq!(single_var_congruence(&r(1, 2), &r(1, 1)), None);
        assert_eq!(
            crt(&BigInt::from(1), &BigInt::from(4), &BigInt::from(3), &BigInt::from(6)),
            Some((BigInt::from(9), BigInt::from(12)))
        );
        assert_eq!(
            crt(&BigInt::from(0), &BigInt::from(2), &BigInt::from(1), &BigInt::from(4)),
            None
        );
    }

    /// Mirrors the shape of the c = 33½ argument: a ≥ 0, a/32768 integral,
    /// (823296 − 29a)/32768 ≥ 0 and integral.
    #[test]
    fn worked_shape_is_refuted_and_replays() {
        let b0 = var(4, 1).scale(&Scalar::from_ratio(1, 32768));
        let b1 = plus(var(4, -29), r(823296, 1)).scale(&Scalar::from_ratio(1, 32768));
        let problem = Problem {
            vars: vec![4],
            constraints: vec![
                Constraint::at_least("B0 >= 0", b0.clone(), 0),
                Constraint::integral("B0 integral", b0),
                Constraint::at_least("B1 >= 0", b1.clone(), 0),
                Constraint::integral("B1 integral", b1),
            ],
            checked_depth: 2,
        };
        let res = solve(&problem, SearchOptions::default()).unwrap();
        assert_eq!(res.status, Status::Infeasible);
        let cert = res.certificate.unwrap();
        cert.replay().unwrap();
        let text = cert.narrate().join("\n");
        assert!(text.contains("a4 >= 0 from B0 >= 0"), "{text}");
        assert!(text.contains("B0 integral forces a4 = 0 mod 32768"), "{text}");
        assert!(text.contains("[a4=0] B1 integral"), "{text}");

        // tampering is caught
        let mut bad = cert.clone();
        if let Some(Step::Violation { value, .. }) = bad.steps.iter_mut().find(|s| matches!(s, Step::Violation { .. }))
        {
            *value = r(25, 1);
        }
        assert!(bad.replay().is_err());
    }

    #[test]
    fn finds_all_solutions_in_a_box() {
        let problem = Problem {
            vars: vec![0, 1],
            constraints: vec![
                Constraint::at_least("x >= 0", var(0, 1), 0),
                Constraint::at_least("y >= 0", var(1, 1), 0),
                Constraint::at_least("x + y <= 2", plus(var(0, -1).add(&var(1, -1)), r(2, 1)), 0),
                Constraint::integral(
                    "(x - y)/2 integral",
                    var(0, 1).add(&var(1, -1)).scale(&Scalar::from_ratio(1, 2)),
                ),
            ],
            checked_depth: 0,
        };
        let res = solve(
            &problem,
            SearchOptions {
                find_all: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(res.status, Status::Feasible);
        // (0,0), (1,1), (2,0), (0,2)
        assert_eq!(res.solutions.len(), 4);
    }

    #[test]
    fn unbounded_is_inconclusive() {
        let problem = Problem {
            vars: vec![0],
            constraints: vec![Constraint::at_least("x >= 5", var(0, 1), 5)],
            checked_depth: 0,
        };
        let res = solve(&problem, SearchOptions::default()).unwrap();
        assert_eq!(res.status, Status::Inconclusive);
    }

    #[test]
    fn farkas_refutation() {
        let problem = Problem {
            vars: vec![0, 1],
            constraints: vec![
                Constraint::at_least("x + y >= 3", var(0, 1).add(&var(1, 1)), 3),
                Constraint::at_least("x + y <= 1", plus(var(0, -1).add(&var(1, -1)), r(1, 1)), 0),
            ],
            checked_depth: 0,
        };
        let res = solve(&problem, SearchOptions::default()).unwrap();
        assert_eq!(res.status, Status::Infeasible);
        let cert = res.certificate.unwrap();
        assert!(matches!(cert.steps[0], Step::Farkas { .. }));
        cert.replay().unwrap();
    }
}
