//! Monster-module bookkeeping at central charge 48.
//!
//! The extremal VOA `W` is assumed to carry `V♮ ⊗ V♮ − (2R₂ + R₁)` as a
//! graded monster module. Traces of involutions then give fixpoint
//! characters, which are compared with the two `μ = 5/2` SVOA families.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::{self, FeasibilityOptions};
use crate::error::{Error, Result};
use crate::feasibility::Status;
use crate::modchar::{self, MonsterClass};
use crate::qseries::{PrecisionPolicy, QSeries, TICKS_PER_Q};
use crate::svoa::even_odd_split;
use crate::{HalfInt, Scalar};

const EMBEDDED: &str = include_str!("../data/monster.csv");

const HEADER: [&str; 4] = ["index", "dimension", "trace2A", "trace2B"];

/// Leading tick of every series at `c = 48`.
const BASE_TICK: i64 = -2 * TICKS_PER_Q;

/// `V♮_n` for `n = −1..=3` as multiplicities of `R₁..R₄`.
const MOONSHINE: [(i64, &[(usize, i64)]); 5] = [
    (-1, &[(1, 1)]),
    (0, &[]),
    (1, &[(1, 1), (2, 1)]),
    (2, &[(1, 1), (2, 1), (3, 1)]),
    (3, &[(1, 2), (2, 2), (3, 1), (4, 1)]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonsterData {
    dims: Vec<BigInt>,
    trace_2a: Vec<Option<BigInt>>,
    trace_2b: Vec<Option<BigInt>>,
}

impl MonsterData {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Dimension of `R_i`, 1-based.
    pub fn dim(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(1).and_then(|j| self.dims.get(j))
    }

    /// `tr(g|R_i)`; `None` where the data file leaves the cell empty.
    pub fn trace(&self, class: MonsterClass, i: usize) -> Option<BigInt> {
        let j = i.checked_sub(1)?;
        match class {
            MonsterClass::A1 => self.dims.get(j).cloned(),
            MonsterClass::A2 => self.trace_2a.get(j).cloned().flatten(),
            MonsterClass::B2 => self.trace_2b.get(j).cloned().flatten(),
        }
    }

    pub fn trace_r2(&self, class: MonsterClass) -> BigInt {
        self.trace(class, 2).expect("validated data has R2 traces")
    }

    /// `Σ m_i tr(g|R_i)`, or `None` if a needed trace is missing.
    pub fn evaluate(&self, class: MonsterClass, mults: &BTreeMap<usize, BigInt>) -> Result<Option<BigInt>> {
        let mut sum = BigInt::zero();
        for (&i, m) in mults {
            if self.dim(i).is_none() {
                return Err(Error::MonsterData(format!("no irreducible R{i} in the data")));
            }
            match self.trace(class, i) {
                Some(t) => sum += m * t,
                None => return Ok(None),
            }
        }
        Ok(Some(sum))
    }

    pub fn dimension_of(&self, mults: &BTreeMap<usize, BigInt>) -> Result<BigInt> {
        Ok(self
            .evaluate(MonsterClass::A1, mults)?
            .expect("dimensions are always present"))
    }

    /// Every consistency sum the data can be held to.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MonsterData(m));
        if self.dims.len() < 8 {
            return bad(format!("need R1..R8, got {} rows", self.dims.len()));
        }
        if !self.dims[0].is_one() {
            return bad(format!("R1 must be 1, got {}", self.dims[0]));
        }
        if self.dims[1] != BigInt::from(196883) {
            return bad(format!("R2 must be 196883, got {}", self.dims[1]));
        }
        if let Some(i) = self.dims.iter().position(|d| !d.is_positive()) {
            return bad(format!("R{} has nonpositive dimension", i + 1));
        }
        for class in [MonsterClass::A2, MonsterClass::B2] {
            if self.trace(class, 1) != Some(BigInt::one()) {
                return bad(format!("trace of {class} on R1 must be 1"));
            }
            if self.trace(class, 2).is_none() {
                return bad(format!("trace of {class} on R2 is required"));
            }
        }
        for (i, d) in self.dims.iter().enumerate() {
            for class in [MonsterClass::A2, MonsterClass::B2] {
                if let Some(t) = self.trace(class, i + 1) {
                    if t.abs() > *d {
                        return bad(format!(
                            "|tr({class}|R{})| = {} exceeds the dimension {d}",
                            i + 1,
                            t.abs()
                        ));
                    }
                }
            }
        }

        // V♮ against J and the McKay–Thompson series.
        let prec = PrecisionPolicy::whole_powers(5).expect("positive");
        for class in MonsterClass::ALL {
            let t = modchar::mckay_thompson(class, prec);
            for (n, parts) in MOONSHINE {
                let mults = parts.iter().map(|&(i, m)| (i, BigInt::from(m))).collect();
                let Some(want) = self.evaluate(class, &mults)? else {
                    continue;
                };
                let got = integer(&t.coefficient_at_tick(n * TICKS_PER_Q)?)?;
                if got != want {
                    return bad(format!(
                        "V♮ in degree {n}: {class} trace from the data is {want}, T_{class} has {got}"
                    ));
                }
            }
        }

        // The decomposition lists against the extremal N=1 character.
        let (chi, shadow) = extremal_n1_c48()?;
        for (dec, series) in [(character_decomposition(), &chi), (shadow_decomposition(), &shadow)] {
            let report = check_decomposition(self, &dec, series, BASE_TICK)?;
            if let Some(row) = report.rows.iter().find(|r| !r.matches) {
                return bad(format!(
                    "{} in degree {}: the data gives {}, the character has {}",
                    row.label,
                    row.degree,
                    row.predicted,
                    row.coefficient
                        .as_ref()
                        .map_or("nothing".to_string(), |c| c.to_string())
                ));
            }
        }
        Ok(())
    }
}

fn integer(s: &Scalar) -> Result<BigInt> {
    let r = s.as_rational()?;
    if !r.is_integer() {
        return Err(Error::InvalidArgument(format!("coefficient {r} is not an integer")));
    }
    Ok(r.to_integer())
}

fn big_str<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn opt_big_str<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

fn parse_cell(row: usize, name: &str, cell: &str) -> Result<Option<BigInt>> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Ok(None);
    }
    cell.parse::<BigInt>()
        .map(Some)
        .map_err(|_| Error::MonsterData(format!("row {row}: {name} '{cell}' is not an integer")))
}

/// Parses `index,dimension,trace2A,trace2B` without validating sums.
pub fn parse_monster_csv(text: &str) -> Result<MonsterData> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::MonsterData(e.to_string()))?.clone();
    let names: Vec<&str> = headers.iter().collect();
    if names != HEADER {
        return Err(Error::MonsterData(format!(
            "expected columns {}, got {}",
            HEADER.join(","),
            names.join(",")
        )));
    }
    let mut data = MonsterData {
        dims: Vec::new(),
        trace_2a: Vec::new(),
        trace_2b: Vec::new(),
    };
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::MonsterData(e.to_string()))?;
        let row = row + 1;
        let index: usize = rec[0]
            .parse()
            .map_err(|_| Error::MonsterData(format!("row {row}: bad index '{}'", &rec[0])))?;
        if index != row {
            return Err(Error::MonsterData(format!("row {row}: index {index} out of sequence")));
        }
        let dim = parse_cell(row, "dimension", &rec[1])?
            .ok_or_else(|| Error::MonsterData(format!("row {row}: dimension missing")))?;
        data.dims.push(dim);
        data.trace_2a.push(parse_cell(row, "trace2A", &rec[2])?);
        data.trace_2b.push(parse_cell(row, "trace2B", &rec[3])?);
    }
    Ok(data)
}

/// Loads and validates the data, from `path` or the embedded table.
pub fn load_monster_data(path: Option<&Path>) -> Result<MonsterData> {
    let data = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::MonsterData(format!("{}: {e}", p.display())))?;
            parse_monster_csv(&text)?
        }
        None => parse_monster_csv(EMBEDDED)?,
    };
    data.validate()?;
    Ok(data)
}

fn prec_past(lead_tick: i64, prec: PrecisionPolicy) -> i64 {
    lead_tick + prec.terms()
}

/// `χ_W = J² − 393767`.
pub fn extremal_voa_character(prec: PrecisionPolicy) -> QSeries {
    let j = modchar::j_invariant(true, prec);
    j.mul(&j)
        .add_monomial(&Scalar::from_int(-393767), 0)
        .truncate(prec_past(BASE_TICK, prec))
}

/// `tr(g|W) = T_g² − (2 tr(g|R₂) + 1)`.
pub fn trace_on_w(class: MonsterClass, data: &MonsterData, prec: PrecisionPolicy) -> QSeries {
    let t = modchar::mckay_thompson(class, prec);
    let shift: BigInt = BigInt::from(2) * data.trace_r2(class) + 1;
    t.mul(&t)
        .add_monomial(&Scalar::from_bigint(-shift), 0)
        .truncate(prec_past(BASE_TICK, prec))
}

/// `χ_{W^⟨t⟩} = (χ_W + tr(t|W)) / 2`.
pub fn fixpoint_character(class: MonsterClass, data: &MonsterData, prec: PrecisionPolicy) -> QSeries {
    extremal_voa_character(prec)
        .add(&trace_on_w(class, data, prec))
        .scale(&Scalar::from_ratio(1, 2))
}

fn extremal_n1_c48() -> Result<(QSeries, QSeries)> {
    bounds::extremal_n1(HalfInt::from_int(48), PrecisionPolicy::whole_powers(7)?)
}

// ---- decompositions -------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    /// Explicit degree; entries without one are placed by position.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    pub multiplicities: BTreeMap<usize, i64>,
}

/// Graded pieces as monster modules, `start + i·step` for the `i`-th entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub name: String,
    pub start: String,
    pub step: String,
    pub entries: Vec<Entry>,
}

impl Decomposition {
    fn positional(name: &str, step: HalfInt, entries: &[(&str, &[(usize, i64)])]) -> Self {
        Self {
            name: name.to_string(),
            start: "0".to_string(),
            step: step.to_string(),
            entries: entries
                .iter()
                .map(|(label, parts)| Entry {
                    label: label.to_string(),
                    degree: None,
                    multiplicities: parts.iter().copied().collect(),
                })
                .collect(),
        }
    }

    pub fn degrees(&self) -> Result<Vec<HalfInt>> {
        let start: HalfInt = self.start.parse()?;
        let step: HalfInt = self.step.parse()?;
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| match &e.degree {
                Some(d) => d.parse(),
                None => Ok(HalfInt::from_twice(start.twice() + i as i64 * step.twice())),
            })
            .collect()
    }
}

/// `V_0 … V_5` of the extremal N=1 SVOA, as listed (the tenth entry is
/// labelled `V_{7/2}` a second time and sits at degree 9/2).
pub fn character_decomposition() -> Decomposition {
    Decomposition::positional(
        "V",
        HalfInt::from_twice(1),
        &[
            ("V_0", &[(1, 1)]),
            ("V_{1/2}", &[]),
            ("V_1", &[]),
            ("V_{3/2}", &[(1, 1)]),
            ("V_2", &[(1, 1)]),
            ("V_{5/2}", &[(1, 1), (2, 1)]),
            ("V_3", &[(1, 1), (2, 1), (3, 1)]),
            ("V_{7/2}", &[(1, 2), (2, 2), (3, 1), (4, 1)]),
            ("V_4", &[(1, 4), (2, 4), (3, 1), (4, 2), (5, 1)]),
            ("V_{7/2}", &[(1, 5), (2, 5), (3, 2), (4, 3), (5, 2), (7, 1)]),
            ("V_5", &[(1, 5), (2, 7), (3, 4), (4, 4), (5, 2), (6, 2), (7, 1), (8, 1)]),
        ],
    )
}

/// `V'_0 … V'_5` of its shadow.
pub fn shadow_decomposition() -> Decomposition {
    Decomposition::positional(
        "V'",
        HalfInt::from_int(1),
        &[
            ("V'_0", &[]),
            ("V'_1", &[]),
            ("V'_2", &[(1, 1)]),
            ("V'_3", &[(1, 2), (2, 2), (3, 2)]),
            ("V'_4", &[(1, 4), (2, 6), (3, 4), (4, 2), (6, 2)]),
            ("V'_5", &[(1, 6), (2, 14), (3, 12), (4, 4), (6, 8), (7, 2), (8, 2)]),
        ],
    )
}

/// Degree written in a label such as `V_{7/2}` or `V'_3`.
fn label_degree(label: &str) -> Option<HalfInt> {
    let (_, rest) = label.split_once('_')?;
    rest.trim_matches(|c| c == '{' || c == '}').parse().ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRow {
    pub label: String,
    pub degree: String,
    #[serde(serialize_with = "big_str")]
    pub predicted: BigInt,
    #[serde(serialize_with = "opt_big_str")]
    pub coefficient: Option<BigInt>,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub name: String,
    pub rows: Vec<DecompositionRow>,
}

impl DecompositionReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &DecompositionRow> {
        self.rows.iter().filter(|r| !r.matches)
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let got = r
                .coefficient
                .as_ref()
                .map_or("beyond precision".to_string(), |c| c.to_string());
            write!(
                f,
                "{:<8} degree {:<4} sum {} coefficient {} {}",
                r.label,
                r.degree,
                r.predicted,
                got,
                if r.matches { "match" } else { "MISMATCH" }
            )?;
            if let Some(n) = &r.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Compares `Σ m_i dim R_i` with the coefficient of `chi` at
/// `base_tick + degree`. Mismatches are reported, not raised.
pub fn check_decomposition(
    data: &MonsterData,
    dec: &Decomposition,
    chi: &QSeries,
    base_tick: i64,
) -> Result<DecompositionReport> {
    let degrees = dec.degrees()?;
    let mut rows = Vec::with_capacity(dec.entries.len());
    for (e, &deg) in dec.entries.iter().zip(&degrees) {
        if let Some((i, m)) = e.multiplicities.iter().find(|(_, m)| **m < 0) {
            return Err(Error::InvalidArgument(format!(
                "{}: multiplicity {m} of R{i} is negative",
                e.label
            )));
        }
        let mults = e.multiplicities.iter().map(|(&i, &m)| (i, BigInt::from(m))).collect();
        let predicted = data.dimension_of(&mults)?;
        let tick = base_tick + deg.ticks();
        let coefficient = match chi.coefficient_at_tick(tick) {
            Ok(s) => Some(integer(&s)?),
            Err(Error::BeyondPrecision { .. }) => None,
            Err(e) => return Err(e),
        };
        let note = label_degree(&e.label)
            .filter(|d| *d != deg)
            .map(|d| format!("labelled degree {d}, checked at degree {deg}"));
        rows.push(DecompositionRow {
            label: e.label.clone(),
            degree: deg.to_string(),
            matches: coefficient.as_ref() == Some(&predicted),
            predicted,
            coefficient,
            note,
        });
    }
    Ok(DecompositionReport {
        name: dec.name.clone(),
        rows,
    })
}

/// Which series a decomposition file is checked against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesRef {
    ExtremalN1Character,
    ExtremalN1Shadow,
    ExtremalVoa,
    Inline(QSeries),
}

/// The `monster check-decomposition` input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionInput {
    pub series: SeriesRef,
    /// Exponent of `q` at degree 0, e.g. `"-2"`.
    pub base_exponent: String,
    pub decomposition: Decomposition,
}

pub fn check_decomposition_input(data: &MonsterData, input: &DecompositionInput) -> Result<DecompositionReport> {
    let series = match &input.series {
        SeriesRef::ExtremalN1Character => extremal_n1_c48()?.0,
        SeriesRef::ExtremalN1Shadow => extremal_n1_c48()?.1,
        SeriesRef::ExtremalVoa => extremal_voa_character(PrecisionPolicy::whole_powers(7)?),
        SeriesRef::Inline(s) => s.clone(),
    };
    let base: HalfInt = input.base_exponent.parse()?;
    check_decomposition(data, &input.decomposition, &series, base.ticks())
}

// ---- splitting the shadow ---------------------------------------------------

/// `χ_W − χ_{V(0)}` and the rest of the shadow, for the extremal N=1 SVOA.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighbourSplit {
    pub even: QSeries,
    pub v2: QSeries,
    pub v3: QSeries,
}

impl NeighbourSplit {
    /// Both pieces nonnegative and `V(2)` empty in degree 2.
    pub fn consistent(&self) -> bool {
        let nonneg = |s: &QSeries| s.iter().all(|(_, c)| c.signum() != std::cmp::Ordering::Less);
        nonneg(&self.v2) && nonneg(&self.v3) && self.v2.coefficient_at_tick(0).map_or(false, |c| c.is_zero())
    }
}

pub fn extremal_neighbour_split(prec: PrecisionPolicy) -> Result<NeighbourSplit> {
    let (chi, shadow) = bounds::extremal_n1(HalfInt::from_int(48), prec)?;
    let (even, _) = even_odd_split(&chi, HalfInt::from_int(48));
    let w = extremal_voa_character(prec);
    let v2 = w.sub(&even);
    let v3 = shadow.sub(&v2);
    Ok(NeighbourSplit { even, v2, v3 })
}

// ---- involution fixpoints ---------------------------------------------------

/// Paper order: family 1 has shadow weight 1, family 2 shadow weight 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub family: usize,
    pub a: Vec<String>,
    pub shadow_weight: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub class: String,
    #[serde(serialize_with = "big_str")]
    pub r2_trace: BigInt,
    pub fixpoint: QSeries,
    pub families: Vec<FamilyMatch>,
    pub neighbour_status: Option<Status>,
    pub matched_family: Option<usize>,
    pub contradiction: bool,
    pub assumptions: Vec<String>,
    pub narrative: Vec<String>,
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class {}: tr(t|R2) = {}", self.class, self.r2_trace)?;
        writeln!(f, "fixpoint character: {}", self.fixpoint)?;
        for line in &self.narrative {
            writeln!(f, "  {line}")?;
        }
        for a in &self.assumptions {
            writeln!(f, "  assumption: {a}")?;
        }
        Ok(())
    }
}

const ASSUMPTIONS: [&str; 3] = [
    "W = V♮⊗V♮ − (2R2 + R1) as graded monster modules in degrees 0..5",
    "W^<t> is rational with fusion algebra Z[Z2×Z2], so the fixpoint character is that of an SVOA even part",
    "at mu = 5/2 a shadow of weight 1 is excluded by a Heisenberg argument beyond characters",
];

pub fn obstruction_pipeline_c48(
    class: MonsterClass,
    data: &MonsterData,
    opts: &FeasibilityOptions,
) -> Result<ObstructionReport> {
    let c = HalfInt::from_int(48);
    // through q^3
    let prec = PrecisionPolicy::whole_powers(5)?;
    let fixpoint = fixpoint_character(class, data, prec);
    let r2_trace = data.trace_r2(class);
    let mut narrative = vec![format!(
        "fixpoint character (chi_W + tr(t|W))/2 with tr(t|R2) = {r2_trace}: {fixpoint}"
    )];

    if class == MonsterClass::A1 {
        narrative.push("t = 1 fixes all of W; no claim".to_string());
        return Ok(ObstructionReport {
            class: class.to_string(),
            r2_trace,
            fixpoint,
            families: Vec::new(),
            neighbour_status: None,
            matched_family: None,
            contradiction: false,
            assumptions: Vec::new(),
            narrative,
        });
    }

    let report = bounds::noneighbour_check(opts)?;
    let status = report.result.status;
    if status == Status::Inconclusive {
        return Err(Error::InvalidArgument(format!(
            "feasibility at c = 48 inconclusive: {}",
            report.result.note.clone().unwrap_or_default()
        )));
    }
    let mut families = Vec::new();
    for fam in &report.families {
        let (even, _) = even_odd_split(&fam.character, c);
        let weight_ticks = fam.shadow.min_tick() - modchar::vacuum_tick(c);
        let weight = HalfInt::from_twice(2 * weight_ticks / TICKS_PER_Q);
        families.push((weight, fam, even.agrees_with(&fixpoint)));
    }
    families.sort_by_key(|(w, _, _)| *w);
    let families: Vec<FamilyMatch> = families
        .into_iter()
        .enumerate()
        .map(|(i, (w, fam, m))| FamilyMatch {
            family: i + 1,
            a: fam.a.iter().map(|x| x.to_string()).collect(),
            shadow_weight: w.to_string(),
            matches: m,
        })
        .collect();
    narrative.push(format!(
        "c = 48, mu = 5/2: {} character families with nonnegative integral character and shadow",
        families.len()
    ));
    let matched = families.iter().find(|f| f.matches);
    let mut contradiction = false;
    match matched {
        None => narrative.push("matches the even part of neither family".to_string()),
        Some(f) => {
            narrative.push(format!(
                "matches the even part of family {} (shadow of minimal conformal weight {})",
                f.family, f.shadow_weight
            ));
            narrative
                .push("under case I the fixpoint VOA extends to an SVOA with this character and shadow".to_string());
            if f.shadow_weight == "1" {
                narrative.push("shadow weight 1 is excluded at mu = 5/2; contradiction".to_string());
                contradiction = true;
            } else {
                narrative.push("shadow weight 2 is allowed at mu = 5/2; no contradiction".to_string());
            }
        }
    }
    Ok(ObstructionReport {
        class: class.to_string(),
        r2_trace,
        matched_family: matched.map(|f| f.family),
        fixpoint,
        families,
        neighbour_status: Some(status),
        contradiction,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        narrative,
    })
}
