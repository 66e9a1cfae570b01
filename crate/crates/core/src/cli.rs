//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 a certified
//! radius fell short of the proven lower bound (or the bounds contradicted
//! each other).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{self, cartan_t_interval};
use crate::certify::{certify_inclusion, search_family, CertificateReport, CertifyConfig, MapFamily};
use crate::complex::CVector;
use crate::domains::DomainSpec;
use crate::error::Error;
use crate::maps::candidate_embedding;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_THEORY: i32 = 4;

/// Allowed shortfall of a certified radius below the proven lower bound.
pub const THEORY_SLACK: f64 = 0.02;
/// Largest parameter accepted by `table`.
pub const TABLE_MAX: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "polysqueeze",
    version,
    about = "Bounds and sampled certificates for polydisk and ball squeezing functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SamplingArgs {
    /// Seed for the sampler and the search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Boundary samples per trial radius; interior samples are a quarter of this.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Bisection tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

impl SamplingArgs {
    pub fn config(&self) -> CertifyConfig {
        let mut cfg = CertifyConfig::default().with_seed(self.seed);
        if let Some(s) = self.samples {
            cfg.boundary_samples = s;
            cfg.interior_samples = (s / 4).max(CertifyConfig::MIN_SAMPLES);
        }
        if let Some(t) = self.tol {
            cfg.bisection_tol = t;
        }
        cfg
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bounds on T and S at a point.
    Eval {
        /// Domain as inline JSON or @path.
        #[arg(long)]
        domain: String,
        /// Point: `0`, a JSON array of reals, or a JSON array of [re, im] pairs.
        #[arg(long)]
        point: String,
        /// Also certify the explicit embedding.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Raw interval bounds for a family of domains, as CSV.
    Table {
        #[arg(long, value_enum, default_value_t = TableKind::Cartan)]
        kind: TableKind,
        /// Largest size parameter (at most 8).
        #[arg(long, default_value_t = 5)]
        max: usize,
    },
    /// T and S along a ray of a punctured ball, as CSV.
    Profile {
        /// Dimension of the ball punctured at the origin.
        #[arg(long, conflicts_with = "domain")]
        n: Option<usize>,
        /// A punctured ball as inline JSON or @path.
        #[arg(long)]
        domain: Option<String>,
        /// Radii as start:step:stop, inside (0, 1).
        #[arg(long, default_value = "0.1:0.1:0.9")]
        grid: String,
        /// Output file (standard output when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add a sampled certificate per row.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Sampled inscribed radius of the explicit (or searched) embedding.
    Certify {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        point: String,
        /// Search a parametric family instead of using the fixed construction.
        #[arg(long, value_enum)]
        search: Option<SearchKind>,
        /// Number of radius estimates the search may spend.
        #[arg(long, default_value_t = 40)]
        budget: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Cartan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    /// The explicit construction only.
    Fixed,
    /// Ball automorphisms followed by a scaling.
    BallScaling,
    /// Ball automorphisms after a unitary.
    Unitary,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn validation(msg: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: msg.into() }
    }

    fn io(msg: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistency(_) => EXIT_THEORY,
            _ => EXIT_VALIDATION,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Eval { domain, point, certify, sampling } => {
            let d = parse_domain(domain)?;
            let z = parse_point(point, d.dimension())?;
            let (report, code) = eval_report(&d, &z, certify.then(|| sampling.config()).as_ref())?;
            emit(out, &report)?;
            Ok(code)
        }
        Command::Table { kind: TableKind::Cartan, max } => {
            let csv = cartan_table(*max)?;
            out.write_all(csv.as_bytes()).map_err(|e| CliError::io(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::Profile { n, domain, grid, out: path, certify, sampling } => {
            let d = match (n, domain) {
                (Some(n), None) => punctured_ball(*n)?,
                (None, Some(s)) => parse_domain(s)?,
                (None, None) => punctured_ball(2)?,
                (Some(_), Some(_)) => return Err(CliError::validation("give either --n or --domain")),
            };
            let radii = parse_grid(grid)?;
            let csv = profile_csv(&d, &radii, certify.then(|| sampling.config()).as_ref())?;
            match path {
                Some(p) => fs::write(p, csv).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?,
                None => out.write_all(csv.as_bytes()).map_err(|e| CliError::io(e.to_string()))?,
            }
            Ok(EXIT_OK)
        }
        Command::Certify { domain, point, search, budget, sampling } => {
            let d = parse_domain(domain)?;
            let z = parse_point(point, d.dimension())?;
            let cfg = sampling.config();
            let report = match search {
                None => certify_inclusion(&d, &z, &cfg)?,
                Some(kind) => {
                    let family = match kind {
                        SearchKind::Fixed => MapFamily::Fixed(candidate_embedding(&d, &z)?),
                        SearchKind::BallScaling => MapFamily::BallAutomorphismScaling,
                        SearchKind::Unitary => MapFamily::AutomorphismAfterUnitary,
                    };
                    search_family(&d, &z, &family, &cfg, *budget)?
                }
            };
            let code = theory_code(&report);
            emit(out, &serde_json::to_value(&report).expect("report serializes"))?;
            Ok(code)
        }
    }
}

fn theory_code(report: &CertificateReport) -> i32 {
    match &report.bounds {
        Some(b) if report.radius_estimate < b.lower - THEORY_SLACK => EXIT_THEORY,
        _ => EXIT_OK,
    }
}

/// The `eval` report as a JSON value with keys `T`, `S`, `flags` and, when
/// certification is requested, `certificate`.
pub fn eval_report(d: &DomainSpec, z: &CVector, certify: Option<&CertifyConfig>) -> CliResult<(Value, i32)> {
    let e = bounds::evaluate(d, z)?;
    let flags = bounds::flags_for(d, &e);
    let mut report = json!({
        "T": e.t,
        "S": e.s,
        "flags": flags,
    });
    let mut code = EXIT_OK;
    if let Some(cfg) = certify {
        let cert = certify_inclusion(d, z, cfg)?;
        code = theory_code(&cert);
        report["certificate"] = serde_json::to_value(&cert).expect("report serializes");
    }
    Ok((report, code))
}

fn emit(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    // serde_json's default map is ordered by key.
    let s = serde_json::to_string(v).expect("value serializes");
    writeln!(out, "{s}").map_err(|e| CliError::io(e.to_string()))
}

/// Reads `--domain`: inline JSON, or `@path` to a JSON file.
pub fn parse_domain(arg: &str) -> CliResult<DomainSpec> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::io(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    DomainSpec::from_json(&text).map_err(|e| CliError::validation(format!("domain: {e}")))
}

/// Reads `--point`: `0` for the origin, a JSON array of reals, or a JSON array
/// of `[re, im]` pairs. The length must equal `dim`.
pub fn parse_point(arg: &str, dim: usize) -> CliResult<CVector> {
    let arg = arg.trim();
    if arg == "0" {
        return Ok(CVector::zeros(dim));
    }
    let v: Value = serde_json::from_str(arg).map_err(|e| CliError::validation(format!("point: {e}")))?;
    let Value::Array(items) = v else {
        return Err(CliError::validation("point: expected `0` or a JSON array"));
    };
    let z = if items.iter().all(Value::is_number) {
        let re: Vec<f64> = items.iter().filter_map(Value::as_f64).collect();
        CVector::from_real(&re)
    } else {
        let pairs: Vec<[f64; 2]> = serde_json::from_value(Value::Array(items))
            .map_err(|e| CliError::validation(format!("point: expected [re, im] pairs ({e})")))?;
        CVector::from_pairs(&pairs)
    }
    .map_err(|e| CliError::validation(format!("point: {e}")))?;
    if z.len() != dim {
        return Err(CliError::validation(format!("point: dimension mismatch: expected {dim}, got {}", z.len())));
    }
    Ok(z)
}

/// Parses `start:step:stop` into the inclusive grid, all values in `(0, 1)`.
pub fn parse_grid(arg: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = arg.split(':').collect();
    let [a, h, b] = parts.as_slice() else {
        return Err(CliError::validation("grid: expected start:step:stop"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| CliError::validation(format!("grid: `{s}`: {e}")));
    let (start, step, stop) = (num(a)?, num(h)?, num(b)?);
    if !(step > 0.0) || stop < start {
        return Err(CliError::validation("grid: need step > 0 and stop >= start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    let values: Vec<f64> = (0..count).map(|i| start + i as f64 * step).collect();
    if values.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(CliError::validation("grid: radii must lie in (0, 1)"));
    }
    Ok(values)
}

fn punctured_ball(n: usize) -> CliResult<DomainSpec> {
    if n == 0 {
        return Err(CliError::validation("n: must be positive"));
    }
    Ok(DomainSpec::puncture(DomainSpec::ball(n), vec![CVector::zeros(n)])?)
}

/// Formats with 12 significant digits, shortest form.
pub fn fmt_num(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

/// Cartan domains up to parameter `max` with the raw bounds `[1/√(nm), 1/√m]`.
pub fn cartan_table(max: usize) -> CliResult<String> {
    if !(2..=TABLE_MAX).contains(&max) {
        return Err(CliError::validation(format!("max: must lie in 2..={TABLE_MAX}, got {max}")));
    }
    let mut domains = Vec::new();
    for r in 1..=max {
        for s in r..=max {
            domains.push((DomainSpec::cartan1(r, s)?, format!("r={r} s={s}")));
        }
    }
    for p in 1..=max {
        domains.push((DomainSpec::cartan2(p)?, format!("p={p}")));
    }
    for q in 2..=max {
        domains.push((DomainSpec::cartan3(q)?, format!("q={q}")));
    }
    for n in 2..=max {
        domains.push((DomainSpec::cartan4(n)?, format!("n={n}")));
    }
    let mut csv = String::from("type,params,n,m,lower,upper\n");
    for (d, params) in domains {
        let (lo, hi) = cartan_t_interval(&d)?;
        let ty = match d {
            DomainSpec::CartanI { .. } => "I",
            DomainSpec::CartanII { .. } => "II",
            DomainSpec::CartanIII { .. } => "III",
            _ => "IV",
        };
        csv.push_str(&format!(
            "{ty},{params},{},{},{},{}\n",
            d.dimension(),
            d.polydisk_direction_count()?,
            fmt_num(lo),
            fmt_num(hi)
        ));
    }
    Ok(csv)
}

/// Rows `norm,T_lower,T_upper,S_exact,certified_estimate` along the first
/// axis. `S_exact` and `certified_estimate` are empty when unavailable.
pub fn profile_csv(d: &DomainSpec, radii: &[f64], certify: Option<&CertifyConfig>) -> CliResult<String> {
    if !matches!(d, DomainSpec::Puncture { .. }) {
        return Err(CliError::validation(format!("domain: profile needs a punctured domain, got {}", d.kind_name())));
    }
    let n = d.dimension();
    let mut csv = String::from("norm,T_lower,T_upper,S_exact,certified_estimate\n");
    for &rho in radii {
        let z = CVector::axis(n, 0, rho);
        let e = bounds::evaluate(d, &z)?;
        let s = if e.s.exact { fmt_num(e.s.lower) } else { String::new() };
        let cert = match certify {
            Some(cfg) => fmt_num(certify_inclusion(d, &z, cfg)?.radius_estimate),
            None => String::new(),
        };
        csv.push_str(&format!("{},{},{},{s},{cert}\n", fmt_num(rho), fmt_num(e.t.lower), fmt_num(e.t.upper)));
    }
    Ok(csv)
}
