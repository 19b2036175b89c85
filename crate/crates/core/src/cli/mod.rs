//! The `mplc` command line: argument parsing, bound validation, dispatch
//! and report emission as JSON or TSV.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::coalgebra::{
    coproduct_of_symbol, delta, verify_coassociativity, verify_delta_squared, verify_depth2_written_out,
    verify_mod_products, Cobracket,
};
use crate::error::Error;
use crate::fields::{FieldElement, FieldSpec, RatFun};
use crate::homology::{bloch_table, BlochRow, BLOCH_TSV_HEADER};
use crate::inversion::{verify_grouped_form, verify_infinity_reductions, verify_invdept2, verify_inversion_claim};
use crate::numerics::{realize_check, wedge_numeric_check, Expectation, NumericOptions, NumericReport, NumericVerdict};
use crate::relations::{
    delta_terms, formal_to_functions, gr_translate_formal, reduce_to_depth1, schema_by_name, schema_terms, show_terms,
    values_in_order, verify_vanishing, ConcreteTerms, GrSymbol, Mode, RelationSchema, VanishingOptions,
    VanishingReport,
};
use crate::report::CheckReport;
use crate::shuffle::{verify_shuffle_delta, ShuffleKind};
use crate::symbolic::parse::{parse_expression, parse_symbol};
use crate::symbolic::{LinComb, Symbol};

const MAX_WEIGHT: u32 = 8;
const MAX_DEPTH: usize = 4;
const MAX_Q: u64 = 128;
const MAX_SAMPLES: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "mplc", version, about = "Lie coalgebra of multiple polylogarithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Debug, Clone)]
struct Options {
    /// Weight bound for verification suites.
    #[arg(long, global = true)]
    weight: Option<u32>,
    /// Depth bound for verification suites.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// `Q`, `Fq:7`, `Fq:9:poly=t^2+1` or `Q(x,y)`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cobracket of a combination such as `2*[x;2] - [x,y;1,1]`.
    Cobracket {
        expr: String,
        /// Use the modified cobracket.
        #[arg(long)]
        prime: bool,
    },
    /// Coproduct of each symbol of a combination.
    Coproduct { expr: String },
    /// Runs an exact verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    Relations {
        #[command(subcommand)]
        action: RelationsAction,
    },
    /// Order of the first homology of the weight-2 complex over finite fields.
    Bloch {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    Numeric {
        #[command(subcommand)]
        action: NumericAction,
    },
    /// Translates `{x}_n` or `{x,y}_{n-1,1}`, written `{x,y;2,1}`.
    GrTranslate { symbol: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    /// delta^2 = 0 on all standard symbols.
    Delta2,
    /// The same for the modified cobracket.
    Deltaprime2,
    Inversion,
    Shuffle,
    Coassoc,
    /// Coproduct modulo products against the cobracket.
    Cor13,
    /// The written-out depth-2 coproduct.
    Depth2,
    All,
}

#[derive(Subcommand, Debug)]
enum RelationsAction {
    /// The built-in relation schemata.
    List,
    /// Checks that the cobracket of a schema (or expression) vanishes.
    Check {
        /// Schema name, e.g. `five_term` or `inversion_depth1(3)`, or an
        /// expression over formal variables.
        target: String,
        /// `exact-wedge`, `specialize` or `numeric`; all when omitted.
        #[arg(long)]
        mode: Option<String>,
        /// Parameter values such as `x=2,y=3`, read in `--field`.
        #[arg(long)]
        at: Option<String>,
        /// Flips the sign of one term first.
        #[arg(long)]
        flip: Option<usize>,
    },
    /// Rewrites a combination of weight <= 3 with depth-1 symbols.
    Reduce { target: String },
}

#[derive(Subcommand, Debug)]
enum NumericAction {
    /// Realized value and realized cobracket vanish at sampled points.
    Check {
        target: String,
        #[arg(long)]
        flip: Option<usize>,
    },
    /// Realized value is constant at sampled points.
    Constancy {
        target: String,
        #[arg(long)]
        flip: Option<usize>,
    },
}

/// Why a command stopped before producing reports.
enum Stop {
    Usage(String),
    Domain(String, Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Domain("error".into(), e)
    }
}

/// Input errors become usage errors.
fn input<T>(r: crate::error::Result<T>) -> Result<T, Stop> {
    r.map_err(|e| Stop::Usage(e.to_string()))
}

/// What a command prints.
struct Output {
    command: String,
    passed: bool,
    json: Value,
    tsv: Vec<String>,
}

impl Output {
    fn new(command: &str) -> Self {
        Output {
            command: command.to_string(),
            passed: true,
            json: Value::Array(Vec::new()),
            tsv: Vec::new(),
        }
    }

    fn push(&mut self, ok: bool, item: impl Serialize, line: String) {
        self.passed &= ok;
        if let Value::Array(v) = &mut self.json {
            v.push(serde_json::to_value(item).expect("reports serialize"));
        }
        self.tsv.push(line);
    }
}

fn check_tsv(r: &CheckReport) -> String {
    format!(
        "{}\t{}\t{}\t{}",
        r.name,
        if r.passed { "PASS" } else { "FAIL" },
        r.checked,
        r.detail.as_deref().unwrap_or("")
    )
}

fn vanishing_tsv(r: &VanishingReport) -> String {
    let v = serde_json::to_value(r).expect("reports serialize");
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}",
        r.name,
        r.mode,
        v["strength"].as_str().unwrap_or(""),
        v["verdict"].as_str().unwrap_or(""),
        r.checked,
        r.detail.as_deref().unwrap_or("")
    )
}

fn numeric_tsv(r: &NumericReport) -> String {
    let v = serde_json::to_value(r).expect("reports serialize");
    format!(
        "{}\t{}\t{}\t{:e}\t{:e}\t{}\t{}",
        r.name,
        r.points,
        r.failures,
        r.max_abs_value,
        r.tolerance,
        v["verdict"].as_str().unwrap_or(""),
        r.strength
    )
}

fn bounded<T: PartialOrd + std::fmt::Display + Copy>(name: &str, v: T, lo: T, hi: T) -> Result<T, Stop> {
    if v < lo || v > hi {
        return Err(Stop::Usage(format!("--{name} must lie in {lo}..={hi}, got {v}")));
    }
    Ok(v)
}

/// Resolved numeric options, validated.
struct Bounds {
    weight: Option<u32>,
    depth: Option<usize>,
    samples: Option<usize>,
    tol: Option<f64>,
    seed: u64,
}

fn validate(o: &Options) -> Result<Bounds, Stop> {
    let weight = o.weight.map(|w| bounded("weight", w, 1, MAX_WEIGHT)).transpose()?;
    let depth = o.depth.map(|d| bounded("depth", d, 1, MAX_DEPTH)).transpose()?;
    let samples = o.samples.map(|s| bounded("samples", s, 1, MAX_SAMPLES)).transpose()?;
    if let Some(t) = o.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Stop::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    Ok(Bounds {
        weight,
        depth,
        samples,
        tol: o.tol,
        seed: o.seed,
    })
}

fn run_verify(suite: Suite, b: &Bounds, out: &mut Output) -> Result<(), Stop> {
    let suites = match suite {
        Suite::All => vec![
            Suite::Delta2,
            Suite::Deltaprime2,
            Suite::Depth2,
            Suite::Coassoc,
            Suite::Cor13,
            Suite::Inversion,
            Suite::Shuffle,
        ],
        s => vec![s],
    };
    for s in suites {
        let reports: Vec<CheckReport> = match s {
            Suite::Delta2 => vec![verify_delta_squared(b.depth.unwrap_or(3), b.weight.unwrap_or(6), Cobracket::Delta)],
            Suite::Deltaprime2 => vec![verify_delta_squared(
                b.depth.unwrap_or(3),
                b.weight.unwrap_or(6),
                Cobracket::DeltaPrime,
            )],
            Suite::Depth2 => vec![verify_depth2_written_out(b.weight.unwrap_or(6))?],
            Suite::Coassoc => vec![verify_coassociativity(b.depth.unwrap_or(2), b.weight.unwrap_or(4))?],
            Suite::Cor13 => vec![verify_mod_products(b.depth.unwrap_or(3), b.weight.unwrap_or(5))?],
            Suite::Inversion => {
                let w = b.weight.unwrap_or(5);
                let mut v = Vec::new();
                for d in 1..=b.depth.unwrap_or(3) {
                    v.push(verify_inversion_claim(d, w)?);
                    v.push(verify_grouped_form(d, w)?);
                }
                v.push(verify_invdept2(w)?);
                v.push(verify_infinity_reductions(w)?);
                v
            }
            Suite::Shuffle => {
                let w = b.weight.unwrap_or(6);
                vec![
                    verify_shuffle_delta(ShuffleKind::OneOne, w)?,
                    verify_shuffle_delta(ShuffleKind::TwoOne, w)?,
                ]
            }
            Suite::All => unreachable!("expanded above"),
        };
        for r in reports {
            let line = check_tsv(&r);
            out.push(r.passed, &r, line);
        }
    }
    Ok(())
}

/// A schema name or an expression over formal variables, as a combination
/// over a function field, with an optional sign flip.
fn target_terms(target: &str, flip: Option<usize>) -> Result<(String, Option<RelationSchema>, ConcreteTerms<RatFun>), Stop> {
    let t = target.trim();
    if t.starts_with('[') || t.starts_with('-') || t.starts_with(|c: char| c.is_ascii_digit()) {
        let comb = input(parse_expression(t))?;
        let mut terms = input(formal_to_functions(&comb))?;
        if let Some(i) = flip {
            let n = terms.len();
            let term = terms
                .get_mut(i)
                .ok_or_else(|| Stop::Usage(format!("--flip {i}: only {n} terms")))?;
            term.1 = -term.1.clone();
        }
        return Ok((t.to_string(), None, terms));
    }
    let mut schema = input(schema_by_name(t))?;
    if let Some(i) = flip {
        if i >= schema.template.len() {
            return Err(Stop::Usage(format!("--flip {i}: {} has {} terms", schema.name, schema.template.len())));
        }
        schema = schema.mutate(i);
    }
    let terms = schema.generic();
    Ok((schema.name.clone(), Some(schema), terms))
}

fn parse_point(schema: &RelationSchema, field: &FieldSpec, at: &str) -> Result<Vec<FieldElement>, Stop> {
    let mut map = std::collections::BTreeMap::new();
    for part in at.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Stop::Usage(format!("expected name=value in --at, got {part}")))?;
        map.insert(k.trim().to_string(), input(field.element(v.trim()))?);
    }
    input(values_in_order(schema, &map))
}

fn run_relations_check(
    target: &str,
    mode: Option<&str>,
    at: Option<&str>,
    flip: Option<usize>,
    field: &FieldSpec,
    b: &Bounds,
    out: &mut Output,
) -> Result<(), Stop> {
    let modes = match mode {
        Some(m) => vec![input(Mode::parse(m))?],
        None => Mode::ALL.to_vec(),
    };
    let opts = VanishingOptions {
        samples: b.samples.unwrap_or(50),
        seed: b.seed,
        tol: b.tol.unwrap_or(1e-8),
        ..Default::default()
    };
    let (name, schema, generic) = target_terms(target, flip)?;
    let terms: ConcreteTerms<FieldElement> = match (at, &schema) {
        (Some(at), Some(s)) => {
            let values = parse_point(s, field, at)?;
            s.instantiate(&values).map_err(|e| Stop::Domain(name.clone(), e))?
        }
        (Some(_), None) => return Err(Stop::Usage("--at needs a schema name".into())),
        (None, Some(s)) => schema_terms(s),
        (None, None) => generic
            .into_iter()
            .map(|(s, c)| (s.map_args(|f| FieldElement::Function(f.clone())), c))
            .collect(),
    };
    for m in modes {
        let r = verify_vanishing(&name, &terms, m, &opts).map_err(|e| Stop::Domain(name.clone(), e))?;
        let line = vanishing_tsv(&r);
        let ok = r.acceptable();
        out.push(ok, &r, line);
    }
    Ok(())
}

fn numeric_opts(b: &Bounds) -> NumericOptions {
    NumericOptions {
        samples: b.samples.unwrap_or(100),
        seed: b.seed,
        tol: b.tol.unwrap_or(1e-8),
        ..Default::default()
    }
}

fn push_numeric(out: &mut Output, r: NumericReport) {
    let line = numeric_tsv(&r);
    out.push(r.verdict == NumericVerdict::Pass, &r, line);
}

/// Parses `{x,y;2,1}` by reading the braces as brackets.
fn parse_gr(text: &str) -> crate::error::Result<GrSymbol<crate::symbolic::Arg>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected {args;indices}".into(),
        })?;
    let s: Symbol = parse_symbol(&format!("[{inner}]"))?;
    Ok(GrSymbol {
        args: s.args,
        index: s.index,
    })
}

fn dispatch(cli: Cli, out: &mut Output) -> Result<(), Stop> {
    let b = validate(&cli.opts)?;
    let field = match &cli.opts.field {
        Some(f) => input(FieldSpec::parse(f))?,
        None => FieldSpec::Rationals,
    };
    match cli.command {
        Command::Cobracket { expr, prime } => {
            let comb = input(parse_expression(&expr))?;
            let which = if prime { Cobracket::DeltaPrime } else { Cobracket::Delta };
            let d = delta(&comb, which).map_err(|e| Stop::Domain(expr.clone(), e))?;
            let name = if prime { "cobracket'" } else { "cobracket" };
            out.push(true, json!({"name": name, "input": comb.to_string(), "output": d.to_string()}), d.to_string());
        }
        Command::Coproduct { expr } => {
            let comb = input(parse_expression(&expr))?;
            let mut total = LinComb::zero();
            for (s, c) in comb.iter() {
                let d = coproduct_of_symbol(s).map_err(|e| Stop::Domain(s.to_string(), e))?;
                total.add_scaled(&d, c);
            }
            out.push(
                true,
                json!({"name": "coproduct", "input": comb.to_string(), "output": total.to_string()}),
                total.to_string(),
            );
        }
        Command::Verify { suite } => run_verify(suite, &b, out)?,
        Command::Relations { action } => match action {
            RelationsAction::List => {
                for e in crate::relations::catalog() {
                    let line = format!("{}\t{}\t{}\t{}\t{}", e.name, e.params.join(","), e.weight, e.template, e.anchor);
                    out.push(true, &e, line);
                }
            }
            RelationsAction::Check { target, mode, at, flip } => {
                run_relations_check(&target, mode.as_deref(), at.as_deref(), flip, &field, &b, out)?
            }
            RelationsAction::Reduce { target } => {
                let (name, _, terms) = target_terms(&target, None)?;
                let r = reduce_to_depth1(&terms).map_err(|e| Stop::Domain(name.clone(), e))?;
                let shown = show_terms(&r);
                out.push(true, json!({"name": name, "input": show_terms(&terms), "output": shown}), shown);
            }
        },
        Command::Bloch { q } => {
            for &v in &q {
                bounded("q", v, 4, MAX_Q)?;
            }
            let rows: Vec<BlochRow> = bloch_table(&q).map_err(|e| Stop::Usage(e.to_string()))?;
            if cli.opts.format == Format::Tsv {
                out.tsv.push(BLOCH_TSV_HEADER.to_string());
            }
            for r in rows {
                let line = r.tsv();
                out.push(r.match_up_to_2_3, &r, line);
            }
        }
        Command::Numeric { action } => {
            let opts = numeric_opts(&b);
            match action {
                NumericAction::Check { target, flip } => {
                    let (name, _, terms) = target_terms(&target, flip)?;
                    let r = realize_check(&name, &terms, Expectation::Vanishing, &opts)
                        .map_err(|e| Stop::Domain(name.clone(), e))?;
                    push_numeric(out, r);
                    let w = delta_terms(&terms).map_err(|e| Stop::Domain(name.clone(), e))?;
                    let r = wedge_numeric_check(&format!("delta {name}"), &w, &opts)
                        .map_err(|e| Stop::Domain(name.clone(), e))?;
                    push_numeric(out, r);
                }
                NumericAction::Constancy { target, flip } => {
                    let (name, _, terms) = target_terms(&target, flip)?;
                    let r = realize_check(&name, &terms, Expectation::Constant, &opts)
                        .map_err(|e| Stop::Domain(name.clone(), e))?;
                    push_numeric(out, r);
                }
            }
        }
        Command::GrTranslate { symbol } => {
            let g = input(parse_gr(&symbol))?;
            let t = gr_translate_formal(&g).map_err(|e| Stop::Domain(g.to_string(), e))?;
            out.push(true, json!({"name": "gr-translate", "input": g.to_string(), "output": t.to_string()}), t.to_string());
        }
    }
    Ok(())
}

/// Runs the command line `args` (program name first), writing reports to
/// `w` and usage errors to `err`. Returns 0 if everything passed, 1 on a
/// failed verification or a domain error, and 2 on a usage error.
pub fn run<I, S>(args: I, w: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(w, "{e}")
            };
            return code;
        }
    };
    let format = cli.opts.format;
    let command = format!("{:?}", cli.command)
        .split([' ', '{', '('])
        .next()
        .unwrap_or("")
        .to_lowercase();
    let mut out = Output::new(&command);
    let code = match dispatch(cli, &mut out) {
        Ok(()) => i32::from(!out.passed),
        Err(Stop::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Stop::Domain(name, e)) => {
            let entry = json!({"name": name, "verdict": "ERROR", "detail": e.to_string()});
            out.push(false, entry, format!("{name}\tERROR\t{e}"));
            1
        }
    };
    let written = match format {
        Format::Json => {
            let doc = json!({"command": out.command, "passed": out.passed, "results": out.json});
            writeln!(w, "{}", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Tsv => out.tsv.iter().try_for_each(|l| writeln!(w, "{l}")),
    };
    if written.is_err() {
        return 1;
    }
    code
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run(std::env::args_os(), &mut lock, &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("mplc").chain(args.iter().copied()), &mut buf, &mut Vec::new());
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn cobracket_of_dilogarithm() {
        let (code, out) = run_str(&["cobracket", "[x;2]"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "[x;1] ^ [x;0]");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["cobracket", "[x,x^-1;1,1]"]).0, 2);
        assert_eq!(run_str(&["verify", "delta2", "--weight", "99"]).0, 2);
        assert_eq!(run_str(&["no-such-command"]).0, 2);
        assert_eq!(run_str(&["bloch", "--q", "3"]).0, 2);
        assert_eq!(run_str(&["relations", "check", "nope"]).0, 2);
    }

    #[test]
    fn failing_relation_exits_one() {
        let (code, out) = run_str(&["relations", "check", "[x;2]", "--mode", "exact-wedge"]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("FAIL"));
        assert_eq!(run_str(&["relations", "check", "five_term"]).0, 0);
    }

    #[test]
    fn relation_at_a_point() {
        let (code, out) = run_str(&["relations", "check", "five_term", "--at", "x=2,y=3", "--mode", "exact-wedge"]);
        assert_eq!(code, 0, "{out}");
        let (code, _) = run_str(&["relations", "check", "five_term", "--at", "x=1,y=3"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn gr_translation() {
        let (code, out) = run_str(&["gr-translate", "{x;3}"]);
        assert_eq!((code, out.trim()), (0, "[x;3]"));
        assert_eq!(run_str(&["gr-translate", "{x,x;2,1}"]).0, 1);
    }

    #[test]
    fn json_is_reproducible() {
        let args = ["numeric", "check", "five_term", "--samples", "10", "--seed", "3", "--format", "json"];
        let (c1, a) = run_str(&args);
        let (c2, b) = run_str(&args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["results"][0]["points"], 10);
    }
}
