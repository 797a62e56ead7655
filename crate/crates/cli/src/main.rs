mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use svoa_core::bounds::{self, Extra, FeasibilityOptions};
use svoa_core::feasibility::Status;
use svoa_core::modchar::{self, CharName, MonsterClass, Sector};
use svoa_core::monster::{self, DecompositionInput};
use svoa_core::scalar::parse_rational;
use svoa_core::svoa::{fit_basis, CharacterSpec, Mode};
use svoa_core::{HalfInt, PrecisionPolicy, QSeries, Scalar};

use output::{scalar_json, series_csv, Format, Outcome, Rendered};

/// Exact characters of self-dual vertex operator superalgebras.
///
/// Exit status: 0 on success, 1 when a verified statement does not hold
/// (a JSON failure record goes to stderr), 2 on usage errors.
#[derive(Parser, Debug)]
#[command(name = "svoa", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Whole powers of q computed past the leading term.
    #[arg(long, global = true, env = "SVOA_TERMS", default_value_t = 8)]
    terms: i64,
    /// Monster data CSV (index,dimension,trace2A,trace2B) replacing the embedded table.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct FeasArgs {
    /// Character coefficients checked past the fixed ones, in half-steps.
    #[arg(long, default_value_t = 16)]
    depth: usize,
    /// Shadow coefficients checked past one per free parameter.
    #[arg(long, default_value_t = 8)]
    shadow_depth: usize,
    /// Search nodes before giving up with Inconclusive.
    #[arg(long, default_value_t = 1_000_000)]
    enum_cap: u64,
    /// Also require nonnegative primary multiplicities.
    #[arg(long)]
    primary_check: bool,
}

impl FeasArgs {
    fn options(self) -> FeasibilityOptions {
        FeasibilityOptions {
            char_depth: self.depth,
            shadow_depth: self.shadow_depth,
            enum_cap: self.enum_cap,
            primary_check: self.primary_check,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Expand a named series.
    Expand(ExpandArgs),
    /// Decide whether a character with the given leading coefficients can exist.
    Solve {
        #[arg(long, value_parser = half_int)]
        c: HalfInt,
        /// Test the hypothesis that the minimal weight exceeds this value.
        #[arg(long, value_parser = half_int, conflicts_with = "targets")]
        mu: Option<HalfInt>,
        /// Leading half-step coefficients C_0, C_1, … instead of --mu.
        #[arg(long, value_delimiter = ',', value_parser = scalar)]
        targets: Option<Vec<Scalar>>,
        /// Require B_0 = 0 (shadow of positive conformal weight).
        #[arg(long)]
        shadow_lead_zero: bool,
        /// Enumerate all solutions instead of stopping at the first.
        #[arg(long)]
        find_all: bool,
        #[command(flatten)]
        feas: FeasArgs,
    },
    /// Upper bounds for the minimal weight over a range of central charges.
    Table {
        #[arg(long, value_parser = half_int, default_value = "1/2")]
        from: HalfInt,
        #[arg(long, value_parser = half_int, default_value = "48")]
        to: HalfInt,
        #[arg(long, value_parser = half_int, default_value = "1/2")]
        step: HalfInt,
        #[command(flatten)]
        feas: FeasArgs,
    },
    /// Check a theorem's computational content.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Monster-module bookkeeping at central charge 48.
    #[command(subcommand)]
    Monster(MonsterCmd),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Sign of a_{2m} via Bürmann–Lagrange and the triangular solve.
    Newbound {
        #[arg(long, value_parser = half_int)]
        c: HalfInt,
    },
    /// Positivity of the coefficients of 2c·B·A' − B'·A.
    Coeffpos {
        #[arg(long, value_parser = rational)]
        c: num_rational::BigRational,
        /// Number of coefficients checked.
        #[arg(long, default_value_t = 3000)]
        n: usize,
    },
    /// No SVOA that is not a VOA has minimal weight above c/24 + 1/2.
    Maxodd {
        #[arg(long, value_parser = half_int)]
        c: HalfInt,
        #[command(flatten)]
        feas: FeasArgs,
    },
    /// Sign of A_{k+1} for the extremal N=1 character.
    N1 {
        #[arg(long, value_parser = half_int)]
        c: HalfInt,
    },
    /// The two character families at c = 48 with minimal weight 5/2.
    Noneighbour {
        #[command(flatten)]
        feas: FeasArgs,
    },
}

#[derive(Subcommand, Debug)]
enum MonsterCmd {
    /// Fixpoint character of an involution and the resulting obstruction.
    Obstruction {
        #[arg(long, value_parser = monster_class)]
        class: MonsterClass,
        #[command(flatten)]
        feas: FeasArgs,
    },
    /// Compare a graded monster decomposition with a character.
    CheckDecomposition {
        /// JSON file with `series`, `base_exponent` and `decomposition`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Check one of the built-in lists instead.
        #[arg(long, value_enum, conflicts_with = "input")]
        builtin: Option<Builtin>,
    },
    /// Split the extremal N=1 shadow into the two neighbour pieces.
    Split,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Builtin {
    Character,
    Shadow,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SeriesName {
    ChiHalf,
    ChiHalfTilde,
    VirasoroVacuum,
    N1Vacuum,
    Verma,
    Eta,
    J,
    JNormalized,
    Hauptmodul,
    MckayThompson,
    ExtremalVoa,
    TraceOnW,
    Fixpoint,
    N1Extremal,
    N1ExtremalShadow,
    Character,
    Shadow,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(value_enum)]
    name: SeriesName,
    #[arg(long, value_parser = half_int)]
    c: Option<HalfInt>,
    /// Conformal weight of a Verma module.
    #[arg(long, value_parser = rational)]
    h: Option<num_rational::BigRational>,
    #[arg(long, value_parser = sector, default_value = "plain")]
    sector: Sector,
    /// η(q^s) scale.
    #[arg(long, default_value_t = 1)]
    scale: i64,
    #[arg(long, value_parser = monster_class)]
    class: Option<MonsterClass>,
    /// Basis coefficients a_0, a_1, … of a character.
    #[arg(long, value_delimiter = ',', value_parser = scalar, conflicts_with = "targets")]
    a: Option<Vec<Scalar>>,
    /// Leading half-step coefficients to fit the basis coefficients to.
    #[arg(long, value_delimiter = ',', value_parser = scalar)]
    targets: Option<Vec<Scalar>>,
    #[arg(long, value_parser = mode, default_value = "svoa")]
    mode: Mode,
}

fn half_int(s: &str) -> std::result::Result<HalfInt, String> {
    s.parse().map_err(|e: svoa_core::Error| e.to_string())
}

fn rational(s: &str) -> std::result::Result<num_rational::BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn scalar(s: &str) -> std::result::Result<Scalar, String> {
    rational(s).map(|r| Scalar::new(r, num_rational::BigRational::from_integer(0.into())))
}

fn monster_class(s: &str) -> std::result::Result<MonsterClass, String> {
    s.parse().map_err(|e: svoa_core::Error| e.to_string())
}

fn sector(s: &str) -> std::result::Result<Sector, String> {
    s.parse().map_err(|e: svoa_core::Error| e.to_string())
}

fn mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: svoa_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { rendered, failure }) => {
            match rendered.emit(cli.format) {
                Ok(text) => print!("{text}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            match failure {
                None => ExitCode::SUCCESS,
                Some(record) => {
                    eprintln!("{}", json!({ "failure": record }));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn precision(terms: i64) -> Result<PrecisionPolicy> {
    if terms < 0 {
        bail!("--terms must be nonnegative, got {terms}");
    }
    Ok(PrecisionPolicy::whole_powers(terms)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Expand(args) => expand(args, precision(cli.terms)?, cli),
        Cmd::Solve {
            c,
            mu,
            targets,
            shadow_lead_zero,
            find_all,
            feas,
        } => solve(
            *c,
            *mu,
            targets.as_deref(),
            *shadow_lead_zero,
            *find_all,
            &feas.options(),
        ),
        Cmd::Table { from, to, step, feas } => table(*from, *to, *step, &feas.options()),
        Cmd::Verify(v) => verify(v),
        Cmd::Monster(m) => monster_cmd(m, cli),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, name: SeriesName) -> Result<T> {
    v.with_context(|| format!("{flag} is required for {name:?}"))
}

fn expand(args: &ExpandArgs, prec: PrecisionPolicy, cli: &Cli) -> Result<Outcome> {
    use SeriesName as S;
    let name = args.name;
    let series = match name {
        S::ChiHalf => CharName::ChiHalf.build(prec)?,
        S::ChiHalfTilde => CharName::ChiHalfTilde.build(prec)?,
        S::VirasoroVacuum => modchar::virasoro_vacuum(need(args.c, "--c", name)?, prec),
        S::N1Vacuum => modchar::n1_vacuum(need(args.c, "--c", name)?, prec),
        S::Verma => {
            let h = args.h.clone().context("--h is required for Verma")?;
            modchar::verma_generic(need(args.c, "--c", name)?, &h, args.sector, prec)?
        }
        S::Eta => modchar::eta(args.scale, prec)?,
        S::J => modchar::j_invariant(false, prec),
        S::JNormalized => modchar::j_invariant(true, prec),
        S::Hauptmodul => modchar::hauptmodul_u(prec),
        S::MckayThompson => modchar::mckay_thompson(need(args.class, "--class", name)?, prec),
        S::ExtremalVoa => monster::extremal_voa_character(prec),
        S::TraceOnW | S::Fixpoint => {
            let data = monster::load_monster_data(cli.data.as_deref())?;
            let class = need(args.class, "--class", name)?;
            if name == S::TraceOnW {
                monster::trace_on_w(class, &data, prec)
            } else {
                monster::fixpoint_character(class, &data, prec)
            }
        }
        S::N1Extremal => bounds::extremal_n1(need(args.c, "--c", name)?, prec)?.0,
        S::N1ExtremalShadow => bounds::extremal_n1(need(args.c, "--c", name)?, prec)?.1,
        S::Character | S::Shadow => return expand_character(args, prec),
    };
    Ok(Outcome::ok(series_rendered(&series)))
}

fn series_rendered(s: &QSeries) -> Rendered {
    Rendered {
        text: format!("{s}\n"),
        json: serde_json::to_value(s).expect("series serialization cannot fail"),
        csv: Some(series_csv(s)),
    }
}

fn expand_character(args: &ExpandArgs, prec: PrecisionPolicy) -> Result<Outcome> {
    let c = need(args.c, "--c", args.name)?;
    let spec = match (&args.a, &args.targets) {
        (Some(a), _) => CharacterSpec::new(c, args.mode, a.clone())?,
        (None, Some(t)) => fit_basis(c, args.mode, t)?,
        (None, None) => bail!("--a or --targets is required"),
    };
    let sym = if args.name == SeriesName::Character {
        spec.character(prec)?
    } else {
        spec.shadow(prec)?
    };
    if sym.is_concrete() {
        return Ok(Outcome::ok(series_rendered(sym.base())));
    }
    // Free coefficients remain: print each coefficient as a linear form.
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut csv = String::from("exponent,coefficient\n");
    let step = if c.is_integral() && args.name == SeriesName::Shadow {
        48
    } else {
        24
    };
    let mut t = sym.min_tick();
    while t < sym.prec_tick() {
        let form = sym.coefficient_at_tick(t)?;
        let e = svoa_core::svoa::format_rational(&svoa_core::qseries::tick_to_exponent(t));
        text.push_str(&format!("q^{e}: {form}\n"));
        csv.push_str(&format!("{e},{form}\n"));
        rows.push(json!({ "exponent": e, "coefficient": form.to_string() }));
        t += step;
    }
    let a: Vec<Value> = spec.a.iter().map(scalar_json).collect();
    Ok(Outcome::ok(Rendered {
        text,
        json: json!({ "c": c.to_string(), "a": a, "coefficients": rows }),
        csv: Some(csv),
    }))
}

fn solve(
    c: HalfInt,
    mu: Option<HalfInt>,
    targets: Option<&[Scalar]>,
    shadow_lead_zero: bool,
    find_all: bool,
    opts: &FeasibilityOptions,
) -> Result<Outcome> {
    let extra = Extra {
        shadow_lead_zero,
        find_all,
        ..Extra::default()
    };
    let h = match (mu, targets) {
        (Some(mu), _) => bounds::min_weight_hypothesis(c, mu, &extra, opts)?,
        (None, Some(t)) => bounds::build_problem(c, t, &extra, opts)?,
        (None, None) => bail!("--mu or --targets is required"),
    };
    let result = svoa_core::feasibility::solve(
        &h.problem,
        svoa_core::feasibility::SearchOptions {
            enum_cap: opts.enum_cap,
            find_all,
        },
    )?;
    let mut text = format!("c = {c}: {}\n", result.status);
    let a: Vec<String> = h.spec.a.iter().map(|x| x.to_string()).collect();
    text.push_str(&format!("fixed a = ({})\n", a.join(", ")));
    for sol in &result.solutions {
        let vals: Vec<String> = sol.iter().map(|(i, v)| format!("a{i} = {v}")).collect();
        text.push_str(&format!("solution: {}\n", vals.join(", ")));
    }
    let mut failure = None;
    if let Some(cert) = &result.certificate {
        for line in cert.narrate() {
            text.push_str(&format!("  {line}\n"));
        }
        if let Err(e) = cert.replay() {
            failure = Some(json!({ "check": "solve", "reason": format!("certificate does not replay: {e}") }));
        }
    }
    if let Some(note) = &result.note {
        text.push_str(&format!("note: {note}\n"));
    }
    if result.status == Status::Inconclusive {
        failure = Some(json!({ "check": "solve", "reason": "inconclusive", "note": result.note }));
    }
    Ok(Outcome {
        rendered: Rendered {
            text,
            json: json!({ "c": c.to_string(), "a": a, "result": result }),
            csv: None,
        },
        failure,
    })
}

fn opt_half(x: Option<HalfInt>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn table(from: HalfInt, to: HalfInt, step: HalfInt, opts: &FeasibilityOptions) -> Result<Outcome> {
    let rows = bounds::table(from, to, step, opts)?;
    let mut text = format!("{:>6}  {:>8}  annotation\n", "c", "mu_upper");
    let mut csv = String::from("c,mu_upper,annotation\n");
    let mut json_rows = Vec::new();
    let mut bad = Vec::new();
    for r in &rows {
        let mu = opt_half(r.analytic_mu_max);
        text.push_str(
            &format!("{:>6}  {:>8}  {}\n", r.c.to_string(), mu, r.annotation)
                .trim_end()
                .to_string(),
        );
        text.push('\n');
        csv.push_str(&format!("{},{},{}\n", r.c, mu, r.annotation));
        let verdicts: Vec<Value> = r
            .verdicts
            .iter()
            .map(|(m, s)| json!({ "mu": m.to_string(), "status": s.to_string() }))
            .collect();
        json_rows.push(json!({
            "c": r.c.to_string(),
            "mu_upper": r.analytic_mu_max.map(|v| v.to_string()),
            "annotation": r.annotation,
            "general_bound": r.general_bound.to_string(),
            "verdicts": verdicts,
        }));
        let above_general = r.analytic_mu_max.map_or(false, |m| m > r.general_bound);
        if !r.is_monotone() || above_general || r.analytic_mu_max.is_none() {
            bad.push(r.c.to_string());
        }
    }
    let failure = (!bad.is_empty())
        .then(|| json!({ "check": "table", "reason": "nonmonotone, undecided or above the general bound", "c": bad }));
    Ok(Outcome {
        rendered: Rendered {
            text,
            json: Value::Array(json_rows),
            csv: Some(csv),
        },
        failure,
    })
}

fn verify(v: &VerifyCmd) -> Result<Outcome> {
    match v {
        VerifyCmd::Newbound { c } => {
            let r = bounds::verify_newbound(*c)?;
            let betas: Vec<Value> = r
                .betas
                .iter()
                .map(|b| {
                    json!({
                        "n": b.n,
                        "rebase": scalar_json(&b.rebase),
                        "lagrange": b.lagrange.as_ref().map(scalar_json),
                    })
                })
                .collect();
            let mut text = format!(
                "c = {}: m = {}, k = {}, r = k - 2m = {}, exponent 48[c/24] - 2c + 47 = {}\n",
                r.c, r.m, r.k, r.r, r.exponent
            );
            text.push_str(&format!(
                "a_2m: Lagrange {}, rebase {}, fit {}\n",
                r.a2m_lagrange, r.a2m_rebase, r.a2m_fit
            ));
            for b in &r.betas {
                text.push_str(&format!("beta_{},{} = {}\n", b.n, r.r, b.rebase));
            }
            text.push_str(&format!(
                "beta_0,0 = {}, beta_r,r = {}, closed form {}\n",
                r.beta00, r.beta_rr, r.beta00_formula
            ));
            let checks = json!({
                "exponent_nonnegative": r.exponent_ok(),
                "routes_agree": r.routes_agree(),
                "a2m_negative": r.a2m_negative(),
                "betas_positive_for_n_le_r": r.betas_positive_where_used(),
                "betas_positive_n_0_to_3": r.betas_positive_all(),
                "beta00_matches_closed_form": r.beta00_matches_formula(),
                "beta_rr_matches_closed_form": r.beta_rr_matches_formula(),
            });
            text.push_str(&format!("{}\n", if r.holds() { "holds" } else { "FAILS" }));
            let failure = (!r.holds()).then(|| json!({ "check": "newbound", "c": r.c.to_string(), "checks": checks }));
            Ok(Outcome {
                rendered: Rendered {
                    text,
                    json: json!({
                        "c": r.c.to_string(), "m": r.m, "k": r.k, "r": r.r, "exponent": r.exponent,
                        "a2m_lagrange": scalar_json(&r.a2m_lagrange),
                        "a2m_rebase": scalar_json(&r.a2m_rebase),
                        "a2m_fit": scalar_json(&r.a2m_fit),
                        "betas": betas,
                        "beta00": scalar_json(&r.beta00),
                        "beta_rr": scalar_json(&r.beta_rr),
                        "beta00_closed_form": scalar_json(&r.beta00_formula),
                        "checks": checks,
                        "holds": r.holds(),
                    }),
                    csv: None,
                },
                failure,
            })
        }
        VerifyCmd::Coeffpos { c, n } => {
            let r = bounds::verify_coeffpos(c, *n)?;
            let verdict = r.verdict();
            let c_str = svoa_core::svoa::format_rational(&r.c);
            let failure = (!r.all_positive())
                .then(|| json!({ "check": "coeffpos", "c": c_str, "n": r.n_max, "verdict": verdict }));
            Ok(Outcome {
                rendered: Rendered {
                    text: format!("{verdict}\n"),
                    json: json!({
                        "c": c_str, "n": r.n_max, "verdict": verdict,
                        "all_positive": r.all_positive(),
                        "zeros": r.zeros,
                        "first_negative": r.first_negative,
                        "negative_count": r.negative_count,
                    }),
                    csv: None,
                },
                failure,
            })
        }
        VerifyCmd::Maxodd { c, feas } => {
            let r = bounds::verify_maxodd(*c, &feas.options())?;
            let mut text = format!("c = {c}: {}\n", r.status);
            let replay = r.certificate.as_ref().map(|cert| cert.replay());
            if let Some(cert) = &r.certificate {
                for line in cert.narrate() {
                    text.push_str(&format!("  {line}\n"));
                }
            }
            let ok = r.status == Status::Infeasible && matches!(replay, Some(Ok(())));
            let failure = (!ok).then(|| {
                json!({
                    "check": "maxodd", "c": c.to_string(), "status": r.status.to_string(),
                    "replay": replay.map(|x| x.err()),
                })
            });
            Ok(Outcome {
                rendered: Rendered {
                    text,
                    json: json!({ "c": c.to_string(), "result": r }),
                    csv: None,
                },
                failure,
            })
        }
        VerifyCmd::N1 { c } => {
            let r = bounds::verify_n1_bound(*c)?;
            let first = r
                .first_nonzero
                .as_ref()
                .map(|(h, v)| json!({ "exponent": h.to_string(), "coefficient": scalar_json(v) }));
            let mut text = format!(
                "c = {}: k = {}, exponent 23 - 2c + 24[c/12] = {}\n",
                r.c, r.k, r.exponent
            );
            text.push_str(&format!(
                "A_k+1: formula {}, Lagrange {}, extremal over vacuum {}\n",
                r.formula, r.lagrange, r.stripped
            ));
            if let Some((h, v)) = &r.first_nonzero {
                text.push_str(&format!("first nonzero stripped coefficient: {v} at q^{h}\n"));
            }
            text.push_str(&format!("shadow leading coefficient {}\n", r.shadow_leading));
            let failure = (!r.holds()).then(|| json!({ "check": "n1", "c": r.c.to_string() }));
            Ok(Outcome {
                rendered: Rendered {
                    text,
                    json: json!({
                        "c": r.c.to_string(), "k": r.k, "exponent": r.exponent,
                        "formula": scalar_json(&r.formula),
                        "lagrange": scalar_json(&r.lagrange),
                        "stripped": scalar_json(&r.stripped),
                        "first_nonzero": first,
                        "shadow_leading": scalar_json(&r.shadow_leading),
                        "exceptional": r.is_exceptional(),
                        "holds": r.holds(),
                    }),
                    csv: None,
                },
                failure,
            })
        }
        VerifyCmd::Noneighbour { feas } => {
            let r = bounds::noneighbour_check(&feas.options())?;
            let mut text = format!("c = 48, mu = 5/2: {} families\n", r.families.len());
            let mut fams = Vec::new();
            for f in &r.families {
                let a: Vec<String> = f.a.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!(
                    "a = ({})\n  character {}\n  shadow    {}\n",
                    a.join(", "),
                    f.character,
                    f.shadow
                ));
                fams.push(json!({ "a": a, "character": f.character, "shadow": f.shadow }));
            }
            let failure = (r.families.len() != 2 || r.result.status == Status::Inconclusive).then(|| {
                json!({ "check": "noneighbour", "families": r.families.len(), "status": r.result.status.to_string() })
            });
            Ok(Outcome {
                rendered: Rendered {
                    text,
                    json: json!({ "status": r.result.status.to_string(), "families": fams, "nodes": r.result.nodes }),
                    csv: None,
                },
                failure,
            })
        }
    }
}

fn monster_cmd(m: &MonsterCmd, cli: &Cli) -> Result<Outcome> {
    let data = monster::load_monster_data(cli.data.as_deref())?;
    match m {
        MonsterCmd::Obstruction { class, feas } => {
            let r = monster::obstruction_pipeline_c48(*class, &data, &feas.options())?;
            let failure = (*class != MonsterClass::A1 && r.matched_family.is_none())
                .then(|| json!({ "check": "obstruction", "class": class.to_string(), "reason": "no family matches" }));
            Ok(Outcome {
                rendered: Rendered {
                    text: r.to_string(),
                    json: serde_json::to_value(&r)?,
                    csv: None,
                },
                failure,
            })
        }
        MonsterCmd::CheckDecomposition { input, builtin } => {
            let input: DecompositionInput = match (input, builtin) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
                }
                (None, Some(b)) => DecompositionInput {
                    series: match b {
                        Builtin::Character => monster::SeriesRef::ExtremalN1Character,
                        Builtin::Shadow => monster::SeriesRef::ExtremalN1Shadow,
                    },
                    base_exponent: "-2".into(),
                    decomposition: match b {
                        Builtin::Character => monster::character_decomposition(),
                        Builtin::Shadow => monster::shadow_decomposition(),
                    },
                },
                (None, None) => bail!("--input or --builtin is required"),
            };
            let r = monster::check_decomposition_input(&data, &input)?;
            let mut csv = String::from("label,degree,sum,coefficient,match\n");
            for row in &r.rows {
                let got = row.coefficient.as_ref().map_or(String::new(), |x| x.to_string());
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.label, row.degree, row.predicted, got, row.matches
                ));
            }
            let failure = (!r.all_match()).then(|| {
                let bad: Vec<&str> = r.mismatches().map(|x| x.label.as_str()).collect();
                json!({ "check": "check-decomposition", "mismatches": bad })
            });
            Ok(Outcome {
                rendered: Rendered {
                    text: r.to_string(),
                    json: serde_json::to_value(&r)?,
                    csv: Some(csv),
                },
                failure,
            })
        }
        MonsterCmd::Split => {
            let prec = precision(cli.terms)?;
            let s = monster::extremal_neighbour_split(prec)?;
            let text = format!(
                "even part  {}\nV(2)       {}\nV(3)       {}\n{}\n",
                s.even,
                s.v2,
                s.v3,
                if s.consistent() {
                    "consistent: V(2) starts in degree 3"
                } else {
                    "INCONSISTENT"
                }
            );
            let failure = (!s.consistent()).then(|| json!({ "check": "split" }));
            Ok(Outcome {
                rendered: Rendered {
                    text,
                    json: json!({ "even": s.even, "v2": s.v2, "v3": s.v3, "consistent": s.consistent() }),
                    csv: None,
                },
                failure,
            })
        }
    }
}
