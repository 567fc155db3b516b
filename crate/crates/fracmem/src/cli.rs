//! Command-line surface: argument types and command execution.
//!
//! Data goes to `--output` (or stdout); diagnostics and the demo's
//! multivaluedness report go to stderr.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracmem_core::caputo::{FracOrder, Signal};
use fracmem_core::indicators::{
    alpha_sweep, average_indicator, detect_multivalued, marginal_indicator, t_indicator, IndicatorPair,
};
use fracmem_core::series::{demo_process, sample, DemoId};
use fracmem_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::check::run_checks;
use crate::csvio::ingest_csv;
use crate::error::AppError;
use crate::format::{num, round15};

/// Default number of grid intervals when sampling closed-form processes.
pub const DEFAULT_N: usize = 2000;

/// Witness pairs listed individually in reports.
const REPORT_LIMIT: usize = 100;

#[derive(Debug, Parser)]
#[command(name = "fracmem", version, about = "Caputo fractional derivatives and T-indicators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Caputo derivative of one column at T.
    Deriv(DerivArgs),
    /// Average, marginal and T-indicator of a pair at T.
    Indicator(IndicatorArgs),
    /// T-indicator over a range of orders.
    Sweep(SweepArgs),
    /// Emit the (X, Y) curve of a demo process and report multivalued points.
    Demo(DemoArgs),
    /// Run the built-in oracle suite.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    Fig1,
    Fig2,
}

impl From<Figure> for DemoId {
    fn from(f: Figure) -> Self {
        match f {
            Figure::Fig1 => DemoId::Fig1,
            Figure::Fig2 => DemoId::Fig2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Column {
    X,
    Y,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// CSV file with header `t,x,y` on a uniform grid starting at 0.
    #[arg(long, conflicts_with = "demo")]
    pub input: Option<PathBuf>,
    /// Use a built-in demo process instead of a file.
    #[arg(long, value_enum)]
    pub demo: Option<Figure>,
    /// Defaults to analytic for demo processes and numeric for files.
    #[arg(long, value_enum)]
    pub engine: Option<Engine>,
    /// Evaluation time; defaults to the end of the series or demo interval.
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    /// Grid intervals used when sampling a demo process numerically.
    #[arg(long = "N", default_value_t = DEFAULT_N)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DerivArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Differentiation order.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, value_enum, default_value_t = Column::Y)]
    pub column: Column,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IndicatorArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Order of the T-indicator.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// `A` or `START:STOP:STEP`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    /// Grid intervals over the demo interval.
    #[arg(long = "N", default_value_t = DEFAULT_N)]
    pub n: usize,
    /// Factor tolerance; defaults to 1e-3 of the factor's range.
    #[arg(long)]
    pub x_tol: Option<f64>,
    /// Indicator tolerance; defaults to 1e-2 of the indicator's range.
    #[arg(long)]
    pub y_tol: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub out: OutputArgs,
}

/// What a command produced: the data artifact, an optional report for
/// stderr, and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub artifact: String,
    pub report: Option<String>,
    pub status: i32,
}

impl Outcome {
    fn data(artifact: String) -> Self {
        Self { artifact, report: None, status: 0 }
    }
}

#[derive(Serialize)]
struct Document {
    command: &'static str,
    params: Value,
    results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    multivalued: Option<Value>,
}

impl Document {
    fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable document");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
struct Row {
    #[serde(skip_serializing_if = "Option::is_none")]
    quantity: Option<&'static str>,
    alpha: f64,
    value: Option<f64>,
    degenerate: bool,
}

impl Row {
    fn new(quantity: Option<&'static str>, alpha: f64, value: Option<f64>) -> Self {
        Self { quantity, alpha, value: value.map(round15), degenerate: value.is_none() }
    }
}

/// Parses `A` or `START:STOP:STEP` into a list of orders.
///
/// Range members are `START + i·STEP`; values within 1e-9·STEP of `STOP`
/// or within 1e-12 of an integer are snapped so that orders 0 and 1 hit the
/// classical branches.
pub fn parse_alpha(spec: &str) -> Result<Vec<f64>, AppError> {
    let bad = || AppError::usage(format!("invalid --alpha `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = parts.iter().map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    match nums[..] {
        [a] => Ok(vec![a]),
        [start, stop, step] => {
            if !(step > 0.0 && start <= stop && start.is_finite() && stop.is_finite()) {
                return Err(AppError::usage("alpha range needs step > 0 and start <= stop"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count)
                .map(|i| {
                    let mut a = start + i as f64 * step;
                    if (a - stop).abs() <= 1e-9 * step {
                        a = stop;
                    }
                    if (a - a.round()).abs() <= 1e-12 {
                        a = a.round();
                    }
                    a
                })
                .collect())
        }
        _ => Err(bad()),
    }
}

fn single_alpha(spec: &str) -> Result<FracOrder, AppError> {
    match parse_alpha(spec)?[..] {
        [a] => Ok(FracOrder::new(a)?),
        _ => Err(AppError::usage("this command takes a single --alpha value")),
    }
}

struct Resolved {
    pair: IndicatorPair,
    t_end: f64,
    params: Value,
}

fn resolve(src: &SourceArgs) -> Result<Resolved, AppError> {
    match (&src.input, src.demo) {
        (Some(path), None) => {
            let engine = src.engine.unwrap_or(Engine::Numeric);
            if engine == Engine::Analytic {
                return Err(AppError::usage("the analytic engine needs a closed-form source (--demo)"));
            }
            let pair = ingest_csv(path)?;
            let t_end = src.t_end.or(pair.end_time()).expect("sampled pair has an end time");
            let params = json!({
                "input": path.display().to_string(),
                "engine": engine,
                "T": t_end,
            });
            Ok(Resolved { pair, t_end, params })
        }
        (None, Some(fig)) => {
            let demo = demo_process(fig.into());
            let engine = src.engine.unwrap_or(Engine::Analytic);
            let t_end = src.t_end.unwrap_or(demo.t_end);
            let (pair, params) = match engine {
                Engine::Analytic => (
                    IndicatorPair::new(Signal::Poly(demo.x), Signal::Poly(demo.y))?,
                    json!({ "demo": fig, "engine": engine, "T": t_end }),
                ),
                Engine::Numeric => (
                    IndicatorPair::new(
                        Signal::Sampled(sample(&demo.x, t_end, src.n)?),
                        Signal::Sampled(sample(&demo.y, t_end, src.n)?),
                    )?,
                    json!({ "demo": fig, "engine": engine, "T": t_end, "N": src.n }),
                ),
            };
            Ok(Resolved { pair, t_end, params })
        }
        _ => Err(AppError::usage("specify exactly one of --input or --demo")),
    }
}

fn with_param(mut params: Value, key: &str, value: Value) -> Value {
    params.as_object_mut().expect("params object").insert(key.to_owned(), value);
    params
}

fn degenerate_ok(r: Result<f64, Error>) -> Result<Option<f64>, AppError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::DenominatorNearZero { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn deriv(args: &DerivArgs) -> Result<Outcome, AppError> {
    let alpha = single_alpha(&args.alpha)?;
    let r = resolve(&args.source)?;
    let signal = match args.column {
        Column::X => r.pair.factor(),
        Column::Y => r.pair.indicator(),
    };
    let value = signal.caputo(alpha, r.t_end)?;
    Ok(Outcome::data(match args.out.format {
        Format::Csv => format!("alpha,value\n{},{}\n", num(alpha.value()), num(value)),
        Format::Json => Document {
            command: "deriv",
            params: with_param(with_param(r.params, "alpha", json!(alpha.value())), "column", json!(args.column)),
            results: json!([Row::new(None, alpha.value(), Some(value))]),
            multivalued: None,
        }
        .render(),
    }))
}

fn indicator(args: &IndicatorArgs) -> Result<Outcome, AppError> {
    let alpha = single_alpha(&args.alpha)?;
    let r = resolve(&args.source)?;
    let rows = [
        ("average", 0.0, degenerate_ok(average_indicator(&r.pair, r.t_end))?),
        ("marginal", 1.0, degenerate_ok(marginal_indicator(&r.pair, r.t_end))?),
        ("t_indicator", alpha.value(), degenerate_ok(t_indicator(&r.pair, alpha, r.t_end))?),
    ];
    Ok(Outcome::data(match args.out.format {
        Format::Csv => {
            let mut s = String::from("quantity,alpha,value\n");
            for (q, a, v) in rows {
                writeln!(s, "{q},{},{}", num(a), cell(v)).expect("writing to a String");
            }
            s
        }
        Format::Json => Document {
            command: "indicator",
            params: with_param(r.params, "alpha", json!(alpha.value())),
            results: json!(rows.iter().map(|&(q, a, v)| Row::new(Some(q), a, v)).collect::<Vec<_>>()),
            multivalued: None,
        }
        .render(),
    }))
}

fn sweep(args: &SweepArgs) -> Result<Outcome, AppError> {
    let alphas = parse_alpha(&args.alpha)?;
    let r = resolve(&args.source)?;
    let result = alpha_sweep(&r.pair, &alphas, r.t_end)?;
    Ok(Outcome::data(match args.out.format {
        Format::Csv => {
            let mut s = String::from("alpha,value\n");
            for (a, v) in &result.entries {
                writeln!(s, "{},{}", num(*a), cell(v.value())).expect("writing to a String");
            }
            s
        }
        Format::Json => Document {
            command: "sweep",
            params: with_param(r.params, "alpha", json!(args.alpha)),
            results: json!(result
                .entries
                .iter()
                .map(|&(a, v)| Row::new(None, a, v.value()))
                .collect::<Vec<_>>()),
            multivalued: None,
        }
        .render(),
    }))
}

fn range(values: &[f64]) -> f64 {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    hi - lo
}

fn demo(args: &DemoArgs) -> Result<Outcome, AppError> {
    let d = demo_process(args.figure.into());
    let x = sample(&d.x, d.t_end, args.n)?;
    let y = sample(&d.y, d.t_end, args.n)?;
    let x_tol = args.x_tol.unwrap_or(1e-3 * range(x.values()));
    let y_tol = args.y_tol.unwrap_or(1e-2 * range(y.values()));
    let witnesses = detect_multivalued(&x, &y, x_tol, y_tol)?;

    let mut report = format!(
        "multivalued: {} witness pairs (x_tol={}, y_tol={})\n",
        witnesses.len(),
        num(x_tol),
        num(y_tol)
    );
    for &(t1, t2) in witnesses.iter().take(5) {
        writeln!(
            report,
            "  t1={} t2={}: X={} vs {}, Y={} vs {}",
            num(t1),
            num(t2),
            num(d.x.eval(t1)),
            num(d.x.eval(t2)),
            num(d.y.eval(t1)),
            num(d.y.eval(t2))
        )
        .expect("writing to a String");
    }

    let artifact = match args.out.format {
        Format::Csv => {
            let mut s = String::from("x,y\n");
            for (xv, yv) in x.values().iter().zip(y.values()) {
                writeln!(s, "{},{}", num(*xv), num(*yv)).expect("writing to a String");
            }
            s
        }
        Format::Json => Document {
            command: "demo",
            params: json!({ "figure": args.figure, "N": args.n, "T": d.t_end, "x_tol": x_tol, "y_tol": y_tol }),
            results: json!(x
                .values()
                .iter()
                .zip(y.values())
                .enumerate()
                .map(|(k, (xv, yv))| json!({ "t": round15(x.time(k)), "x": round15(*xv), "y": round15(*yv) }))
                .collect::<Vec<_>>()),
            multivalued: Some(json!({
                "count": witnesses.len(),
                "witnesses": witnesses.iter().take(REPORT_LIMIT).map(|&(a, b)| [round15(a), round15(b)]).collect::<Vec<_>>(),
            })),
        }
        .render(),
    };
    Ok(Outcome { artifact, report: Some(report), status: 0 })
}

fn check(args: &CheckArgs) -> Outcome {
    let outcomes = run_checks();
    let all = outcomes.iter().all(|c| c.passed);
    let artifact = match args.out.format {
        Format::Csv => {
            let mut s = String::new();
            for c in &outcomes {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{tag} [{}] {}: {}", c.id, c.name, c.detail).expect("writing to a String");
            }
            writeln!(s, "{}", if all { "all checks passed" } else { "some checks FAILED" })
                .expect("writing to a String");
            s
        }
        Format::Json => Document { command: "check", params: json!({}), results: json!(outcomes), multivalued: None }.render(),
    };
    Outcome { artifact, report: None, status: if all { 0 } else { 1 } }
}

/// Executes a parsed command line without touching stdout or stderr.
pub fn execute(cli: &Cli) -> Result<Outcome, AppError> {
    match &cli.command {
        Command::Deriv(a) => deriv(a),
        Command::Indicator(a) => indicator(a),
        Command::Sweep(a) => sweep(a),
        Command::Demo(a) => demo(a),
        Command::Check(a) => Ok(check(a)),
    }
}

/// The `--output` destination of the parsed command.
pub fn output_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Deriv(a) => a.out.output.as_ref(),
        Command::Indicator(a) => a.out.output.as_ref(),
        Command::Sweep(a) => a.out.output.as_ref(),
        Command::Demo(a) => a.out.output.as_ref(),
        Command::Check(a) => a.out.output.as_ref(),
    }
}
