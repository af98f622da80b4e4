//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a bound was evaluated
//! outside its hypotheses (flags are printed on stderr), 3 a `verify` suite
//! found a violation.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bernoulli::{self, BernoulliSim, HistogramConfig, IfsParams, StepFunction};
use crate::bounds::{
    bv_corollary_bound, bv_window, doeblin_corollary_bound, min_n_theorem_a, plan_required_n,
    theorem_a_bound, theorem_b_bound, BoundResult, ObservableSpec,
};
use crate::certificate::{
    bernoulli_certificate, doeblin_gap, hypercube_gap, lemma_gap, Family, GapCertificate,
    HypercubeNorm, LemmaInput,
};
use crate::doeblin::{self, DoeblinSim, FiniteKernel};
use crate::error::{domain, Error, Result};
use crate::hypercube::{self, build_observable, ObservableKind, SimConfig, Start};
use crate::output::{fmt_f64, to_json_string, write_deviation_csv, DeviationPoint};
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

const RNG_HELP: &str = "\
Random streams: replica (or run) r under --seed s draws from the ChaCha8 \
keystream keyed by ChaCha8Rng::seed_from_u64(s) with stream id r; the step \
index is the keystream position. Output is identical for any --threads value.";

#[derive(Debug, Parser)]
#[command(
    name = "gapcert",
    version,
    about = "Spectral-gap certificates and explicit MCMC concentration bounds",
    after_help = RNG_HELP
)]
pub struct Cli {
    /// Read flags from a JSON object {"command": ..., "<flag>": value, ...} instead of argv.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker cap for simulations (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the main artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a gap certificate as JSON.
    Gap(GapArgs),
    /// Evaluate one of the four tail bounds.
    Bound(BoundArgs),
    /// Smallest chain length reaching a target tail probability.
    Plan(PlanArgs),
    /// Empirical tail curves next to the proven bound.
    Simulate(SimulateArgs),
    /// Run the oracle property suites.
    Verify(VerifyArgs),
    /// Histogram data of the Bernoulli-convolution chain.
    Hist(HistArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Doeblin,
    Hypercube,
    Bernoulli,
    Custom,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Minorization constant (doeblin).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Hypercube dimension N.
    #[arg(long = "n-slots")]
    pub n_slots: Option<u32>,
    /// Hypercube norm: L, dL or W.
    #[arg(long)]
    pub norm: Option<String>,
    /// IFS contraction ratio (bernoulli).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Constant C (custom).
    #[arg(long = "c")]
    pub c_const: Option<f64>,
    /// Seminorm contraction θ (custom).
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    Doeblin,
    Bv,
}

impl Theorem {
    fn name(self) -> &'static str {
        match self {
            Theorem::A => "A",
            Theorem::B => "B",
            Theorem::Doeblin => "doeblin",
            Theorem::Bv => "bv",
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub theorem: Theorem,
    /// Certified gap (A, B).
    #[arg(long)]
    pub delta0: Option<f64>,
    /// Observable norm ‖φ‖ (A, B) or ‖φ‖_BV (bv).
    #[arg(long)]
    pub norm: Option<f64>,
    /// Chain length.
    #[arg(long)]
    pub n: u64,
    /// Deviation.
    #[arg(long)]
    pub a: f64,
    /// Variance proxy U (B).
    #[arg(long = "u")]
    pub u: Option<f64>,
    /// Known dynamical variance, checked against U (B).
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Minorization constant (doeblin).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Block length (bv).
    #[arg(long)]
    pub ell: Option<u32>,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub delta0: f64,
    #[arg(long)]
    pub norm: f64,
    #[arg(long)]
    pub a: f64,
    /// Target tail probability.
    #[arg(long)]
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimFamily {
    Hypercube,
    Doeblin,
    Bernoulli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimObservable {
    /// Proportion of ones (hypercube).
    Rho,
    /// Indicator of {x_1 = 0} (hypercube).
    FirstSlotZero,
    /// (−1)^{|x|} (hypercube).
    Parity,
    /// 1_{x ≥ 0} (bernoulli).
    Indicator,
    /// sign(x) (bernoulli).
    Sign,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub family: SimFamily,
    /// Chain length (block steps for bernoulli). Defaults to the bound's minimal length.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub replicas: u64,
    #[arg(long)]
    pub seed: u64,
    /// Comma-separated deviations; default is 10 points inside the bound's window.
    #[arg(long = "a-grid", value_delimiter = ',')]
    pub a_grid: Option<Vec<f64>>,
    /// Hypercube dimension.
    #[arg(long = "n-slots", default_value_t = 4)]
    pub n_slots: u32,
    /// Hypercube norm used for the certificate: L, dL or W.
    #[arg(long = "hnorm", default_value = "dL")]
    pub hnorm: String,
    #[arg(long, value_enum)]
    pub observable: Option<SimObservable>,
    /// Start: "uniform" or a vertex word (hypercube), a state (doeblin), a point (bernoulli).
    #[arg(long)]
    pub start: Option<String>,
    /// Kernel JSON {"size": k, "data": [...]} (doeblin).
    #[arg(long)]
    pub kernel: Option<PathBuf>,
    /// Comma-separated observable values in [-1, 1] (doeblin).
    #[arg(long = "f", value_delimiter = ',', allow_hyphen_values = true)]
    pub f_values: Option<Vec<f64>>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Step-function JSON {"breakpoints": [...], "values": [...]} (bernoulli).
    #[arg(long = "step-fn")]
    pub step_fn: Option<PathBuf>,
    /// Exact integral used as the tail centre (bernoulli); default is the median estimate.
    #[arg(long, allow_hyphen_values = true)]
    pub reference: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct HistArgs {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 500)]
    pub bins: usize,
    #[arg(long, default_value_t = 30)]
    pub runs: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub points: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub start: f64,
}

/// Expands `--config file.json` into ordinary flags.
fn expand_config(args: Vec<String>) -> std::result::Result<Vec<String>, String> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let (path, consumed) = match args[pos].strip_prefix("--config=") {
        Some(p) => (p.to_string(), 1),
        None => (args.get(pos + 1).cloned().ok_or("--config needs a path")?, 2),
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("--config {path}: {e}"))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("--config {path}: {e}"))?;
    let Value::Object(map) = value else {
        return Err(format!("--config {path}: expected a JSON object"));
    };

    let mut rest: Vec<String> = args[..pos].to_vec();
    rest.extend(args[pos + consumed..].iter().cloned());
    let mut out = vec![rest.first().cloned().unwrap_or_else(|| "gapcert".into())];
    let has_command = rest.len() > 1 && !rest[1].starts_with('-');
    if has_command {
        out.push(rest[1].clone());
    } else {
        match map.get("command") {
            Some(Value::String(c)) => out.push(c.clone()),
            _ => return Err(format!("--config {path}: missing \"command\"")),
        }
    }
    for (key, v) in &map {
        if key == "command" {
            continue;
        }
        let rendered = match v {
            Value::String(s) => s.clone(),
            Value::Array(items) => items
                .iter()
                .map(|i| match i {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        };
        out.push(format!("--{key}={rendered}"));
    }
    // Explicit flags after the config win over the file.
    out.extend(rest.iter().skip(if has_command { 2 } else { 1 }).cloned());
    Ok(out)
}

/// Parses `argv` and runs the subcommand. Never panics on bad input.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn dispatch_with_io<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let Some(command) = &cli.command else {
        let _ = writeln!(err, "error: a subcommand is required (gap, bound, plan, simulate, verify, hist)");
        return EXIT_USAGE;
    };
    let ctx = Ctx { threads: cli.threads, format: cli.format, output: cli.output.clone() };
    let result = match command {
        Command::Gap(a) => run_gap(a, &ctx, out),
        Command::Bound(a) => run_bound(a, &ctx, out, err),
        Command::Plan(a) => run_plan(a, &ctx, out),
        Command::Simulate(a) => run_simulate(a, &ctx, out, err),
        Command::Verify(a) => run_verify(a, &ctx, out),
        Command::Hist(a) => run_hist(a, &ctx, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Ctx {
    threads: usize,
    format: Option<Format>,
    output: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, out: &mut dyn Write, write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
        match &self.output {
            Some(path) => {
                let mut w = BufWriter::new(create(path)?);
                write(&mut w)?;
                w.flush()?;
            }
            None => write(out)?,
        }
        Ok(())
    }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(Error::from)
}

fn need<T>(value: Option<T>, flag: &str, why: &str) -> Result<T> {
    value.ok_or_else(|| domain(format!("missing --{flag} (required {why})")))
}

fn json_of<T: Serialize>(value: &T) -> Result<Value> {
    Ok(serde_json::to_value(value)?)
}

fn run_gap(a: &GapArgs, ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let (cert, ell): (GapCertificate, Option<u32>) = match a.family {
        FamilyArg::Doeblin => (doeblin_gap(need(a.beta, "beta", "for --family doeblin")?)?, None),
        FamilyArg::Hypercube => {
            let n = need(a.n_slots, "n-slots", "for --family hypercube")?;
            let norm: HypercubeNorm = need(a.norm.as_deref(), "norm", "for --family hypercube")?.parse()?;
            (hypercube_gap(n, norm)?, None)
        }
        FamilyArg::Bernoulli => {
            let (ell, cert) = bernoulli_certificate(need(a.lambda, "lambda", "for --family bernoulli")?)?;
            (cert, Some(ell))
        }
        FamilyArg::Custom => {
            let c = need(a.c_const, "c", "for --family custom")?;
            let theta = need(a.theta, "theta", "for --family custom")?;
            (lemma_gap(LemmaInput::new(c, theta)?), None)
        }
    };
    let mut value = json_of(&cert)?;
    if let Some(ell) = ell {
        value["ell"] = json!(ell);
    }
    ctx.emit(out, |w| writeln!(w, "{}", to_json_string(&value)))?;
    Ok(EXIT_OK)
}

fn evaluate_bound(a: &BoundArgs) -> Result<BoundResult> {
    match a.theorem {
        Theorem::A | Theorem::B => {
            let cert = GapCertificate::from_delta0(need(a.delta0, "delta0", "for theorems A and B")?)?;
            let mut obs = ObservableSpec::from_norm(Family::Custom, need(a.norm, "norm", "for theorems A and B")?)?;
            if let Some(s2) = a.sigma2 {
                obs = obs.with_sigma2(s2)?;
            }
            if a.theorem == Theorem::A {
                theorem_a_bound(&cert, &obs, a.n, a.a)
            } else {
                theorem_b_bound(&cert, &obs, need(a.u, "u", "for theorem B")?, a.n, a.a)
            }
        }
        Theorem::Doeblin => doeblin_corollary_bound(need(a.beta, "beta", "for the doeblin bound")?, a.n, a.a),
        Theorem::Bv => bv_corollary_bound(
            need(a.ell, "ell", "for the bv bound")?,
            need(a.norm, "norm", "(the BV norm) for the bv bound")?,
            a.n,
            a.a,
        ),
    }
}

fn run_bound(a: &BoundArgs, ctx: &Ctx, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let b = evaluate_bound(a)?;
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut value = json_of(&b)?;
            value["theorem"] = json!(a.theorem.name());
            ctx.emit(out, |w| writeln!(w, "{}", to_json_string(&value)))?;
        }
        Format::Csv => ctx.emit(out, |w| {
            writeln!(w, "theorem,raw,clipped,regime,valid,violations")?;
            writeln!(
                w,
                "{},{},{},{},{},{}",
                a.theorem.name(),
                fmt_f64(b.raw),
                fmt_f64(b.clipped),
                b.regime.as_str(),
                b.valid,
                b.codes().join(";")
            )
        })?,
    }
    Ok(report_flags(&b.codes(), err))
}

fn report_flags(codes: &[&str], err: &mut dyn Write) -> i32 {
    if codes.is_empty() {
        EXIT_OK
    } else {
        let _ = writeln!(err, "precondition violated: {}", codes.join(", "));
        EXIT_PRECONDITION
    }
}

fn run_plan(a: &PlanArgs, ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let cert = GapCertificate::from_delta0(a.delta0)?;
    let obs = ObservableSpec::from_norm(Family::Custom, a.norm)?;
    let n = plan_required_n(&cert, &obs, a.a, a.p)?;
    let min_n = min_n_theorem_a(&cert)?;
    let bound = theorem_a_bound(&cert, &obs, n, a.a)?;
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => {
            let value = json!({
                "n": n,
                "exact_min_n": min_n.exact_n,
                "simplified_min_n": min_n.simplified_n,
                "bound_at_n": bound.raw,
                "regime": bound.regime.as_str(),
            });
            ctx.emit(out, |w| writeln!(w, "{}", to_json_string(&value)))?;
        }
        Format::Csv => ctx.emit(out, |w| {
            writeln!(w, "n,exact_min_n,simplified_min_n,bound_at_n,regime")?;
            writeln!(w, "{n},{},{},{},{}", min_n.exact_n, min_n.simplified_n, fmt_f64(bound.raw), bound.regime.as_str())
        })?,
    }
    Ok(EXIT_OK)
}

/// `points` deviations evenly spread over `(0, window]` (or `(0, window)` when `strict`).
pub fn grid_inside(window: f64, points: usize, strict: bool) -> Vec<f64> {
    let top = if strict { window * (1.0 - 1e-9) } else { window };
    (1..=points).map(|k| top * k as f64 / points as f64).collect()
}

const DEFAULT_GRID_POINTS: usize = 10;

fn run_simulate(a: &SimulateArgs, ctx: &Ctx, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let points: Vec<DeviationPoint> = match a.family {
        SimFamily::Hypercube => simulate_hypercube(a, ctx)?,
        SimFamily::Doeblin => simulate_doeblin(a, ctx)?,
        SimFamily::Bernoulli => simulate_bernoulli(a, ctx)?,
    };
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => ctx.emit(out, |w| write_deviation_csv(w, &points))?,
        Format::Json => {
            let value = json_of(&points)?;
            ctx.emit(out, |w| writeln!(w, "{}", to_json_string(&value)))?;
        }
    }
    let exceeded = points.iter().filter(|p| p.wilson_upper > p.bound_raw).count();
    if exceeded > 0 {
        let _ = writeln!(err, "warning: {exceeded} grid point(s) have an empirical upper limit above the bound");
    }
    let invalid = points.iter().any(|p| !p.bound_valid);
    Ok(report_flags(if invalid { &["bound hypotheses violated on part of the grid"] } else { &[] }, err))
}

fn simulate_hypercube(a: &SimulateArgs, ctx: &Ctx) -> Result<Vec<DeviationPoint>> {
    let kind = match a.observable.unwrap_or(SimObservable::Rho) {
        SimObservable::Rho => ObservableKind::Rho,
        SimObservable::FirstSlotZero => ObservableKind::FirstSlotZero,
        SimObservable::Parity => ObservableKind::Parity,
        other => return Err(domain(format!("observable {other:?} is not defined on the hypercube"))),
    };
    let norm: HypercubeNorm = a.hnorm.parse()?;
    let f = build_observable(&kind, a.n_slots)?;
    let start = match a.start.as_deref() {
        None | Some("uniform") => Start::Uniform,
        Some(word) => Start::Point(parse_word(word)?),
    };
    let cert = hypercube_gap(a.n_slots, norm)?;
    let obs = hypercube::seminorms(&f).observable_spec(norm)?;
    let n = a.n.unwrap_or(min_n_theorem_a(&cert)?.exact_n);
    let grid = a
        .a_grid
        .clone()
        .unwrap_or_else(|| grid_inside(obs.norm * cert.delta0 / 3.0, DEFAULT_GRID_POINTS, false));
    let cfg = SimConfig { n, replicas: a.replicas, seed: a.seed, threads: ctx.threads };
    Ok(hypercube::deviation_curve(&f, norm, start, &grid, &cfg)?.1)
}

fn parse_word(s: &str) -> Result<u64> {
    let parsed = match s.strip_prefix("0b") {
        Some(bits) => u64::from_str_radix(bits, 2),
        None => s.parse(),
    };
    parsed.map_err(|_| domain(format!("--start {s:?} is neither \"uniform\" nor a vertex word")))
}

fn simulate_doeblin(a: &SimulateArgs, ctx: &Ctx) -> Result<Vec<DeviationPoint>> {
    let path = need(a.kernel.as_ref(), "kernel", "for --family doeblin")?;
    let kernel = FiniteKernel::from_json_str(&std::fs::read_to_string(path)?)?;
    let f = need(a.f_values.clone(), "f", "for --family doeblin")?;
    let split = doeblin::minorization_split(&kernel)?;
    let n = a.n.unwrap_or((crate::constants::COROLLARY_N_FACTOR / split.beta).ceil() as u64);
    let start = match a.start.as_deref() {
        None => 0,
        Some(s) => s.parse().map_err(|_| domain(format!("--start {s:?} is not a state index")))?,
    };
    let grid = a.a_grid.clone().unwrap_or_else(|| grid_inside(split.beta / 2.0, DEFAULT_GRID_POINTS, false));
    let sim = DoeblinSim { n, replicas: a.replicas, seed: a.seed, start, threads: ctx.threads };
    Ok(doeblin::deviation_curve(&kernel, &f, &grid, &sim)?.1)
}

fn simulate_bernoulli(a: &SimulateArgs, ctx: &Ctx) -> Result<Vec<DeviationPoint>> {
    let params = IfsParams::new(need(a.lambda, "lambda", "for --family bernoulli")?)?;
    let f = match (&a.step_fn, a.observable) {
        (Some(path), _) => StepFunction::from_json_str(&std::fs::read_to_string(path)?)?,
        (None, None | Some(SimObservable::Indicator)) => StepFunction::indicator_from(0.0),
        (None, Some(SimObservable::Sign)) => StepFunction::sign(),
        (None, Some(other)) => return Err(domain(format!("observable {other:?} is not a step function"))),
    };
    let norm = bernoulli::bv_norm(&f).norm;
    let n = a.n.unwrap_or(crate::bounds::bv_min_n(params.ell) as u64);
    let start = match a.start.as_deref() {
        None => 0.0,
        Some(s) => s.parse().map_err(|_| domain(format!("--start {s:?} is not a number")))?,
    };
    let grid = a.a_grid.clone().unwrap_or_else(|| grid_inside(bv_window(params.ell, norm), DEFAULT_GRID_POINTS, true));
    let sim = BernoulliSim { n, replicas: a.replicas, seed: a.seed, start, threads: ctx.threads };
    Ok(bernoulli::estimate_integral(&params, &f, &sim, a.reference, &grid)?.curve)
}

fn run_verify(a: &VerifyArgs, ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let results = crate::rng::with_threads(ctx.threads, || {
        verify::run_all(VerifyOptions { trials: a.trials, seed: a.seed })
    })?;
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let value = json_of(&results)?;
            ctx.emit(out, |w| writeln!(w, "{}", to_json_string(&value)))?;
        }
        Format::Csv => ctx.emit(out, |w| {
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                write!(w, "{status} {} cases={} violations={}", r.name, r.cases, r.violations)?;
                if let Some(f) = &r.first_failure {
                    write!(w, " first_failure=\"{f}\"")?;
                }
                writeln!(w)?;
            }
            Ok(())
        })?,
    }
    Ok(if results.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn run_hist(a: &HistArgs, ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let cfg = HistogramConfig {
        n_points: a.points,
        bins: a.bins,
        runs: a.runs,
        seed: a.seed,
        start: a.start,
        threads: ctx.threads,
    };
    let bins = bernoulli::histogram(a.lambda, &cfg)?;
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => ctx.emit(out, |w| bernoulli::write_histogram_csv(w, &bins))?,
        Format::Json => {
            let value = json_of(&bins)?;
            ctx.emit(out, |w| writeln!(w, "{}", to_json_string(&value)))?;
        }
    }
    Ok(EXIT_OK)
}
