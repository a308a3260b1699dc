//! Command-line front end. Every subcommand writes one table, either as CSV
//! with `#` metadata lines or as a JSON object `{config, results, diagnostics}`.
//!
//! Errors produce a single line `error kind=<tag> exit=<code> message="<text>"`
//! on the error stream.

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::asymptotics::{
    counting_lln, decay_rate_estimate, expected_alpha_sum, expected_beta_sum, tail_convergence_check, TailGrid,
};
use crate::io::{configurations_table, write_csv, write_json, Cell, JsonReport, Table};
use crate::kernels::{
    admissible, fourier_khat, fourier_numeric, tail_constants, Kernel, KernelSpec, SpectralParams, TailConstants,
    Variant,
};
use crate::operators::{
    alpha1_cdf, correlation, fdd_pi, fredholm_det, gap_probability_adaptive, nystrom_shared, resolvent_kernel, Region,
};
use crate::sampler::{
    lift, sample_dpp_many, sample_poisson_dirichlet_many, stream_rng, PointConfiguration, SeedRecord, StickOptions,
};
use crate::sturm::{
    commutation_residual, off_diagonal_grid, sl_params_sine, sl_params_stationary, sl_params_whittaker, FdOptions,
    NEGATIVE_CONTROL,
};
use crate::{Error, Result};

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "FERMION_THREADS";

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_TRUNCATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fermion", version, about = "Determinantal point processes from the Whittaker kernel family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<std::path::PathBuf>,
    /// Worker threads (defaults to $FERMION_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Kernel values on a grid of (x, y) pairs.
    KernelEval(KernelEvalArgs),
    /// det(1 - λ K_A) for several λ.
    Fredholm(FredholmArgs),
    /// Probability of no points in the region.
    Gap(GapArgs),
    /// Correlation function at a set of points, and the Janossy density if a region is given.
    Correlations(CorrelationArgs),
    /// Distribution function of the largest α for the Whittaker kernel.
    Alpha1Cdf(Alpha1Args),
    /// Exact samples of the discretized process.
    Sample(SampleArgs),
    /// Multiply a configuration by independent Gamma(t) factors.
    Lift(LiftArgs),
    /// Poisson–Dirichlet(t) samples by stick breaking.
    PdSample(PdArgs),
    /// Convergence of rescaled Whittaker correlations to the stationary limit.
    Tail(TailArgs),
    /// N_T/T for samples of a stationary kernel.
    Lln(LlnArgs),
    /// Mean of x_j^{1/j} for Poisson–Dirichlet samples.
    Decay(DecayArgs),
    /// Closed-form E(Σα) and E(Σβ).
    Expect(ParamArgs),
    /// Closed-form versus numerical Fourier transform of a stationary kernel.
    FourierCheck(FourierArgs),
    /// Whether tail constants define a determinantal process.
    Admissible(ConstArgs),
    /// Finite-difference check that the Sturm–Liouville operator commutes with the kernel.
    SturmCheck(SturmArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Whittaker,
    Stationary,
    Sine,
    LaguerreCd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum VariantArg {
    SinSh,
    ShSh,
    Shlimit,
    Ratiolimit,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::SinSh => Variant::SinSh,
            VariantArg::ShSh => Variant::ShSh,
            VariantArg::Shlimit => Variant::ShLimit,
            VariantArg::Ratiolimit => Variant::RatioLimit,
        }
    }
}

fn complex_arg(s: &str) -> std::result::Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

/// Parse "re", "imi", "re+imi" or "re-imi".
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidParameters(format!("cannot parse complex number {s:?}"));
    let t = s.trim();
    let num = |p: &str| p.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(num(t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let im = |p: &str| match p {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(p),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, im(&body[k..])?)),
        None => Ok(Complex64::new(0.0, im(body)?)),
    }
}

fn region_arg(s: &str) -> std::result::Result<RegionArg, String> {
    Region::parse(s).map(RegionArg).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
struct RegionArg(Region);

impl Serialize for RegionArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.intervals.serialize(s)
    }
}

fn ser_complex<S: serde::Serializer>(z: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    z.map(|z| format!("{}{:+}i", z.re, z.im)).serialize(s)
}

#[derive(Debug, Args, Serialize)]
struct ParamArgs {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_complex")]
    z: Option<Complex64>,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_complex")]
    zp: Option<Complex64>,
}

impl ParamArgs {
    fn params(&self) -> Result<SpectralParams> {
        match (self.z, self.zp) {
            (Some(z), Some(zp)) => SpectralParams::new(z, zp),
            _ => Err(Error::InvalidParameters("both --z and --zp are required".into())),
        }
    }
}

/// Tail constants, given directly or derived from (z, z′).
#[derive(Debug, Args, Serialize)]
struct ConstArgs {
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long = "B")]
    b: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    params: ParamArgs,
}

impl ConstArgs {
    fn constants(&self) -> Result<TailConstants> {
        if let Some(v) = self.variant {
            return TailConstants::new(v.into(), self.a.unwrap_or(0.0), self.b.unwrap_or(0.0));
        }
        if self.params.z.is_some() || self.params.zp.is_some() {
            return Ok(tail_constants(&self.params.params()?));
        }
        Err(Error::InvalidParameters("give --variant with --A/--B, or --z and --zp".into()))
    }
}

#[derive(Debug, Args, Serialize)]
struct KernelArgs {
    #[arg(long, value_enum, default_value_t = Family::Sine)]
    kernel: Family,
    #[command(flatten)]
    #[serde(flatten)]
    consts: ConstArgs,
    /// Degree N of the Laguerre ensemble.
    #[arg(long)]
    n: Option<usize>,
    /// Laguerre weight exponent.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
}

impl KernelArgs {
    fn spec(&self) -> Result<KernelSpec> {
        Ok(match self.kernel {
            Family::Sine => KernelSpec::Sine,
            Family::Whittaker => KernelSpec::Whittaker(self.consts.params.params()?),
            Family::Stationary => KernelSpec::Stationary(self.consts.constants()?),
            Family::LaguerreCd => KernelSpec::LaguerreCd {
                n: self.n.ok_or_else(|| Error::InvalidParameters("--n is required".into()))?,
                mu: self.mu.ok_or_else(|| Error::InvalidParameters("--mu is required".into()))?,
            },
        })
    }
}

#[derive(Debug, Args, Serialize)]
struct Discretization {
    /// Gauss–Legendre points per panel.
    #[arg(long, default_value_t = 32)]
    order: usize,
    /// Longest panel; intervals are split into equal panels no longer than this.
    #[arg(long, default_value_t = 1.0)]
    panel: f64,
}

#[derive(Debug, Args, Serialize)]
struct KernelEvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    y: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
struct FredholmArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = region_arg, allow_hyphen_values = true)]
    region: RegionArg,
    #[command(flatten)]
    #[serde(flatten)]
    disc: Discretization,
    #[arg(long, value_delimiter = ',', default_value = "1", allow_hyphen_values = true)]
    lambda: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
struct GapArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = region_arg, allow_hyphen_values = true)]
    region: RegionArg,
    /// Target change between successive order doublings.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 256)]
    max_order: usize,
}

#[derive(Debug, Args, Serialize)]
struct CorrelationArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    points: Vec<f64>,
    #[arg(long, value_parser = region_arg, allow_hyphen_values = true)]
    region: Option<RegionArg>,
    #[command(flatten)]
    #[serde(flatten)]
    disc: Discretization,
}

#[derive(Debug, Args, Serialize)]
struct Alpha1Args {
    #[command(flatten)]
    #[serde(flatten)]
    params: ParamArgs,
    #[arg(long, value_delimiter = ',')]
    tau: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
struct SampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = region_arg, allow_hyphen_values = true)]
    region: RegionArg,
    #[command(flatten)]
    #[serde(flatten)]
    disc: Discretization,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args, Serialize)]
struct LiftArgs {
    /// Configuration in (0, 1].
    #[arg(long, value_delimiter = ',')]
    points: Vec<f64>,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args, Serialize)]
struct PdArgs {
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    max_sticks: usize,
    /// Stop breaking once the unassigned mass drops below this.
    #[arg(long, default_value_t = 1e-12)]
    residual_tol: f64,
}

#[derive(Debug, Args, Serialize)]
struct TailArgs {
    #[command(flatten)]
    #[serde(flatten)]
    params: ParamArgs,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001")]
    scales: Vec<f64>,
    /// Grid extent in units of the correlation length 1/B.
    #[arg(long, default_value_t = 3.0)]
    extent: f64,
    #[arg(long, default_value_t = 7)]
    points: usize,
}

#[derive(Debug, Args, Serialize)]
struct LlnArgs {
    #[command(flatten)]
    #[serde(flatten)]
    consts: ConstArgs,
    /// Window lengths T; samples live on [0, max T].
    #[arg(long = "T", value_delimiter = ',', default_value = "10,25,50")]
    windows: Vec<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    disc: Discretization,
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args, Serialize)]
struct DecayArgs {
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 40)]
    j: usize,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args, Serialize)]
struct FourierArgs {
    #[command(flatten)]
    #[serde(flatten)]
    consts: ConstArgs,
    #[arg(long, default_value_t = 10.0)]
    ymax: f64,
    #[arg(long, default_value_t = 41)]
    points: usize,
}

#[derive(Debug, Args, Serialize)]
struct SturmArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// "lo,hi,n"; defaults to the interior of the operator's interval.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-2)]
    band: f64,
    #[arg(long, default_value_t = 1e-4)]
    rel_step: f64,
}

/// Output of one subcommand before formatting.
struct Report {
    table: Table,
    /// Replaces the row objects in JSON output when set.
    results: Option<Value>,
    diagnostics: Vec<(String, Value)>,
}

impl Report {
    fn table(table: Table) -> Self {
        Report { table, results: None, diagnostics: Vec::new() }
    }

    fn diag(mut self, key: &str, v: impl Serialize) -> Self {
        self.diagnostics.push((key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null)));
        self
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Pole(_) | Error::Domain(_) | Error::InvalidParameters(_) | Error::Unsupported(_) => EXIT_USAGE,
        Error::Truncation(_) => EXIT_TRUNCATION,
        _ => EXIT_NUMERICAL,
    }
}

fn error_line(err: &mut dyn Write, kind: &str, code: i32, message: &str) {
    let msg = message.lines().next().unwrap_or("").replace('\\', "\\\\").replace('"', "\\\"");
    let _ = writeln!(err, "error kind={kind} exit={code} message=\"{msg}\"");
}

/// Run the CLI with `argv` (including the program name). Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.kind().to_string();
            let detail = e.to_string();
            let line = detail
                .lines()
                .find(|l| l.starts_with("error:"))
                .map(|l| l.trim_start_matches("error:").trim().to_string())
                .unwrap_or(text);
            error_line(err, "usage", EXIT_USAGE, &line);
            return EXIT_USAGE;
        }
    };
    let threads = cli
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .filter(|&n| n > 0);
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(Error::InvalidParameters(format!("thread pool: {e}"))),
        },
        None => execute(&cli.command),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let code = exit_code(&e);
            error_line(err, e.kind(), code, &e.to_string());
            return code;
        }
    };
    let config = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    let mut buf = Vec::new();
    let written = match cli.format {
        Format::Csv => {
            let mut meta = vec![("config".to_string(), config.to_string())];
            meta.extend(report.diagnostics.iter().map(|(k, v)| (k.clone(), v.to_string())));
            write_csv(&mut buf, &meta, &report.table)
        }
        Format::Json => {
            let rep = JsonReport {
                config,
                results: report.results.unwrap_or_else(|| report.table.to_json()),
                diagnostics: Value::Object(report.diagnostics.into_iter().collect()),
            };
            write_json(&mut buf, &rep)
        }
    };
    let written = written.and_then(|_| match &cli.output {
        Some(path) => std::fs::write(path, &buf),
        None => out.write_all(&buf),
    });
    if let Err(e) = written {
        error_line(err, "io", EXIT_USAGE, &e.to_string());
        return EXIT_USAGE;
    }
    0
}

fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::KernelEval(a) => kernel_eval(a),
        Command::Fredholm(a) => fredholm(a),
        Command::Gap(a) => gap(a),
        Command::Correlations(a) => correlations(a),
        Command::Alpha1Cdf(a) => alpha1(a),
        Command::Sample(a) => sample(a),
        Command::Lift(a) => lift_cmd(a),
        Command::PdSample(a) => pd_sample(a),
        Command::Tail(a) => tail(a),
        Command::Lln(a) => lln(a),
        Command::Decay(a) => decay(a),
        Command::Expect(a) => expect(a),
        Command::FourierCheck(a) => fourier_check(a),
        Command::Admissible(a) => admissible_cmd(a),
        Command::SturmCheck(a) => sturm_check(a),
    }
}

fn require<T>(v: &[T], flag: &str) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidParameters(format!("{flag} needs at least one value")));
    }
    Ok(())
}

fn kernel_eval(a: &KernelEvalArgs) -> Result<Report> {
    require(&a.x, "--x")?;
    let ys = if a.y.is_empty() { &a.x } else { &a.y };
    let spec = a.kernel.spec()?;
    let g = spec.gram(&a.x, ys)?;
    let mut t = Table::new(&["x", "y", "K"]);
    for (i, &x) in a.x.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            t.push(vec![x.into(), y.into(), g[(i, j)].into()]);
        }
    }
    Ok(Report::table(t).diag("kernel", spec.label()))
}

fn fredholm(a: &FredholmArgs) -> Result<Report> {
    let spec = a.kernel.spec()?;
    let op = nystrom_shared(Arc::new(spec.clone()), &a.region.0, a.disc.order, Some(a.disc.panel))?;
    op.check_spectrum()?;
    let mut t = Table::new(&["lambda", "det"]);
    for &l in &a.lambda {
        t.push(vec![l.into(), fredholm_det(&op, l).into()]);
    }
    let s = op.spectrum();
    Ok(Report::table(t)
        .diag("kernel", spec.label())
        .diag("nodes", op.len())
        .diag("trace", op.trace())
        .diag("eigenvalue_range", [s.min(), s.max()]))
}

fn gap(a: &GapArgs) -> Result<Report> {
    let spec = a.kernel.spec()?;
    let kernel: Arc<dyn Kernel> = Arc::new(spec.clone());
    let region = &a.region.0;
    let pan = panels_of(region, 1.0);
    let c = gap_probability_adaptive(kernel, region, Some(&pan), 8, a.max_order, a.tol)?;
    if !(c.change <= a.tol) {
        return Err(Error::Numerical(format!(
            "gap probability did not settle to {:e} by order {}",
            a.tol, a.max_order
        )));
    }
    let mut t = Table::new(&["gap_probability", "order", "change"]);
    t.push(vec![c.value.into(), c.order.into(), c.change.into()]);
    Ok(Report::table(t).diag("kernel", spec.label()).diag("panels", pan.len()))
}

fn panels_of(region: &Region, len: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a, b) in &region.intervals {
        let n = ((b - a) / len).ceil().max(1.0) as usize;
        let h = (b - a) / n as f64;
        out.extend((0..n).map(|k| (a + k as f64 * h, if k + 1 == n { b } else { a + (k + 1) as f64 * h })));
    }
    out
}

fn correlations(a: &CorrelationArgs) -> Result<Report> {
    let spec = a.kernel.spec()?;
    let rho = correlation(&spec, &a.points)?;
    let mut t = Table::new(&["quantity", "n", "value"]);
    t.push(vec!["rho".into(), a.points.len().into(), rho.into()]);
    let mut rep_diag = Vec::new();
    if let Some(r) = &a.region {
        let op = nystrom_shared(Arc::new(spec.clone()), &r.0, a.disc.order, Some(a.disc.panel))?;
        op.check_spectrum()?;
        let res = resolvent_kernel(&op)?;
        t.push(vec!["janossy".into(), a.points.len().into(), fdd_pi(&res, &a.points)?.into()]);
        rep_diag.push(("nodes", op.len()));
    }
    let mut rep = Report::table(t).diag("kernel", spec.label());
    for (k, v) in rep_diag {
        rep = rep.diag(k, v);
    }
    Ok(rep)
}

fn alpha1(a: &Alpha1Args) -> Result<Report> {
    require(&a.tau, "--tau")?;
    let p = a.params.params()?;
    let mut t = Table::new(&["tau", "cdf", "order", "change"]);
    for &tau in &a.tau {
        let c = alpha1_cdf(&p, tau)?;
        t.push(vec![tau.into(), c.value.into(), c.order.into(), c.change.into()]);
    }
    Ok(Report::table(t).diag("series", p.series))
}

fn configs_report(configs: &[PointConfiguration]) -> Result<Report> {
    let counts: Vec<usize> = configs.iter().map(|c| c.len()).collect();
    let mean = counts.iter().sum::<usize>() as f64 / counts.len().max(1) as f64;
    Ok(Report {
        table: configurations_table(configs),
        results: Some(serde_json::to_value(configs).map_err(|e| Error::Numerical(e.to_string()))?),
        diagnostics: Vec::new(),
    }
    .diag("configurations", configs.len())
    .diag("mean_count", mean))
}

fn sample(a: &SampleArgs) -> Result<Report> {
    let spec = a.kernel.spec()?;
    let op = nystrom_shared(Arc::new(spec.clone()), &a.region.0, a.disc.order, Some(a.disc.panel))?;
    let configs = sample_dpp_many(&op, a.count, a.seed)?;
    Ok(configs_report(&configs)?.diag("kernel", spec.label()).diag("nodes", op.len()))
}

fn lift_cmd(a: &LiftArgs) -> Result<Report> {
    let base = PointConfiguration::new(a.points.clone(), vec![(0.0, 1.0)], None)?;
    let configs = (0..a.count as u64)
        .map(|i| {
            let mut c = lift(&base, a.t, &mut stream_rng(a.seed, i))?;
            c.seed = Some(SeedRecord { root: a.seed, stream: i });
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    configs_report(&configs)
}

fn pd_sample(a: &PdArgs) -> Result<Report> {
    let opt = StickOptions { max_sticks: a.max_sticks, residual_tol: a.residual_tol };
    let samples = sample_poisson_dirichlet_many(a.t, &opt, a.count, a.seed)?;
    let mut t = Table::new(&["value", "config_id"]);
    for (id, s) in samples.iter().enumerate() {
        for &x in &s.alpha {
            t.push(vec![x.into(), id.into()]);
        }
    }
    let worst = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    Ok(Report {
        table: t,
        results: Some(serde_json::to_value(&samples).map_err(|e| Error::Numerical(e.to_string()))?),
        diagnostics: Vec::new(),
    }
    .diag("configurations", samples.len())
    .diag("max_residual", worst))
}

fn tail(a: &TailArgs) -> Result<Report> {
    let p = a.params.params()?;
    let grid = TailGrid { lo: 0.0, hi: a.extent, points: a.points };
    let devs = tail_convergence_check(&p, &a.scales, &grid)?;
    let mut t = Table::new(&["scale", "deviation"]);
    for d in &devs {
        t.push(vec![d.scale.into(), d.deviation.into()]);
    }
    Ok(Report::table(t).diag("series", p.series).diag("constants", tail_constants(&p)))
}

fn lln(a: &LlnArgs) -> Result<Report> {
    require(&a.windows, "--T")?;
    let c = a.consts.constants()?;
    let verdict = admissible(&c);
    if !verdict.ok {
        return Err(Error::InvalidParameters(format!("constants not admissible: {}", verdict.reason)));
    }
    let top = a.windows.iter().cloned().fold(0.0, f64::max);
    let region = Region::interval(0.0, top)?;
    let op = nystrom_shared(Arc::new(KernelSpec::Stationary(c)), &region, a.disc.order, Some(a.disc.panel))?;
    let configs = sample_dpp_many(&op, a.count, a.seed)?;
    let est = counting_lln(&configs, &a.windows)?;
    let mut t = Table::new(&["T", "mean", "stderr"]);
    for e in &est {
        t.push(vec![e.at.into(), e.mean.into(), e.stderr.into()]);
    }
    Ok(Report::table(t).diag("constants", c).diag("nodes", op.len()))
}

fn decay(a: &DecayArgs) -> Result<Report> {
    // every coordinate is needed, so stick breaking runs to the cap
    let opt = StickOptions { max_sticks: a.j.max(200), residual_tol: 0.0 };
    let samples = sample_poisson_dirichlet_many(a.t, &opt, a.count, a.seed)?;
    let configs: Vec<PointConfiguration> = samples.iter().map(|s| s.to_configuration(None)).collect();
    let est = decay_rate_estimate(&configs, a.j)?;
    let mut t = Table::new(&["j", "mean", "stderr", "limit"]);
    let limit = (-1.0 / a.t).exp();
    for e in &est {
        t.push(vec![(e.at as usize).into(), e.mean.into(), e.stderr.into(), limit.into()]);
    }
    Ok(Report::table(t))
}

fn expect(a: &ParamArgs) -> Result<Report> {
    let p = a.params()?;
    let al = expected_alpha_sum(&p)?;
    let be = expected_beta_sum(&p)?;
    let mut t = Table::new(&["alpha_sum", "beta_sum", "total"]);
    t.push(vec![al.into(), be.into(), (al + be).into()]);
    Ok(Report::table(t).diag("series", p.series))
}

fn fourier_check(a: &FourierArgs) -> Result<Report> {
    let c = a.consts.constants()?;
    let n = a.points.max(2);
    let mut t = Table::new(&["y", "closed_form", "numeric", "abs_diff"]);
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let y = -a.ymax + 2.0 * a.ymax * k as f64 / (n - 1) as f64;
        let cf = fourier_khat(&c, y)?;
        let nu = fourier_numeric(&c, y)?;
        // the ShLimit transform jumps at |y| = A
        let d = (cf - nu).abs();
        worst = worst.max(d);
        t.push(vec![y.into(), cf.into(), nu.into(), d.into()]);
    }
    Ok(Report::table(t).diag("constants", c).diag("max_abs_diff", worst))
}

fn admissible_cmd(a: &ConstArgs) -> Result<Report> {
    let c = a.constants()?;
    let v = admissible(&c);
    let mut t = Table::new(&["admissible", "reason"]);
    t.push(vec![Cell::Bool(v.ok), v.reason.into()]);
    Ok(Report::table(t).diag("constants", c))
}

fn sturm_check(a: &SturmArgs) -> Result<Report> {
    let spec = a.kernel.spec()?;
    let sl = match &spec {
        KernelSpec::Sine => sl_params_sine(a.tau)?,
        KernelSpec::Stationary(c) => sl_params_stationary(c, a.tau)?,
        KernelSpec::Whittaker(p) => sl_params_whittaker(p, a.tau)?,
        KernelSpec::LaguerreCd { .. } => {
            return Err(Error::Unsupported("no commuting operator is implemented for laguerre-cd".into()))
        }
    };
    let (lo, hi, n) = match &a.grid {
        Some(g) if g.len() == 3 => (g[0], g[1], g[2] as usize),
        Some(_) => return Err(Error::InvalidParameters("--grid takes lo,hi,n".into())),
        None => {
            let (l, h) = sl.domain;
            if h.is_finite() {
                let mid = 0.5 * (l + h);
                let half = 0.45 * (h - l);
                (mid - half, mid + half, 20)
            } else {
                (l + 0.1 * a.tau, l + 4.0 * a.tau, 12)
            }
        }
    };
    let grid = off_diagonal_grid(lo, hi, n, a.band);
    let fd = FdOptions { rel_step: a.rel_step, ..FdOptions::default() };
    let matched = commutation_residual(&spec, &sl, &grid, &fd)?;
    let control = commutation_residual(&spec, &sl.perturbed(NEGATIVE_CONTROL), &grid, &fd)?;
    let mut t = Table::new(&["case", "residual"]);
    t.push(vec!["matched".into(), matched.into()]);
    t.push(vec!["perturbed".into(), control.into()]);
    Ok(Report::table(t)
        .diag("kernel", spec.label())
        .diag("grid", [lo, hi, n as f64])
        .diag("grid_points", grid.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0+1i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("0-1i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("0.25").unwrap(), Complex64::new(0.25, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("1e-3-2.5e+1i").unwrap(), Complex64::new(1e-3, -25.0));
        assert_eq!(parse_complex("-0.5+i").unwrap(), Complex64::new(-0.5, 1.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::Domain(String::new())), 2);
        assert_eq!(exit_code(&Error::Truncation(String::new())), 4);
        assert_eq!(exit_code(&Error::Spectrum(String::new())), 3);
    }
}
