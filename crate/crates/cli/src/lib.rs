//! Batch runner behind the `apery-verify` binary: option parsing, grid
//! resolution, parallel evaluation and report rendering.

use std::collections::BTreeMap;
use std::path::PathBuf;

use apery_core::identities::{
    grid, validate_params, verify_with_tolerance, ExactComplex, GridAxes, IdentityId,
    IdentityReport, Params,
};
use apery_core::{Cx, PrecisionContext, RootOfUnity};
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

pub const SCHEMA: &str = "apery-verify/1";
pub const MIN_DIGITS: u32 = 20;
pub const MAX_DIGITS: u32 = 300;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Numerically verify series identities and report residuals.
#[derive(Debug, Clone, Parser)]
#[command(name = "apery-verify", version)]
pub struct Cli {
    /// Identities to check: `all` or a comma-separated list of ids.
    #[arg(long, default_value = "all")]
    pub identity: String,

    /// Print the identity catalog and exit.
    #[arg(long)]
    pub list: bool,

    /// Target decimal digits.
    #[arg(long, default_value_t = 30)]
    pub digits: u32,

    /// Pass threshold replacing the per-class tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    pub jobs: Option<usize>,

    /// Replace the q axis.
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<u32>>,

    /// Replace the a axis (rationals, decimals or complex like 3/10+1/5i).
    #[arg(long, value_delimiter = ',')]
    pub a: Option<Vec<String>>,

    /// Replace the b axis with absolute values of b.
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<String>>,

    /// Replace the root-of-unity axis; p/N means exp(2 pi i p/N).
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<String>>,

    /// Replace the m axis.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u32>>,

    /// Replace the p axis.
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<u32>>,

    /// Replace the argument axis of the disk and Fuss-Catalan identities.
    #[arg(long = "fc-x", value_delimiter = ',')]
    pub fc_x: Option<Vec<String>>,

    /// Omit elapsed times so that reports are byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

/// A fully resolved run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub points: Vec<(IdentityId, Params)>,
    pub digits: u32,
    pub tolerance: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub timing: bool,
}

fn parse_list<T, E: std::fmt::Display>(
    name: &str,
    values: &Option<Vec<String>>,
    parse: impl Fn(&str) -> Result<T, E>,
) -> Result<Option<Vec<T>>, String> {
    let Some(values) = values else {
        return Ok(None);
    };
    values
        .iter()
        .map(|v| parse(v).map_err(|e| format!("--{name} {v}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn parse_ids(spec: &str) -> Result<Vec<IdentityId>, String> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(IdentityId::ALL.to_vec());
    }
    let mut ids = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let id: IdentityId = name.parse().map_err(|e| format!("--identity: {e}"))?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    if ids.is_empty() {
        return Err("--identity: no identity selected".into());
    }
    Ok(ids)
}

/// Checks the options and expands the grids. Errors are configuration
/// errors (exit status 2).
pub fn resolve(cli: &Cli) -> Result<RunConfig, String> {
    if !(MIN_DIGITS..=MAX_DIGITS).contains(&cli.digits) {
        return Err(format!(
            "--digits must lie in [{MIN_DIGITS}, {MAX_DIGITS}], got {}",
            cli.digits
        ));
    }
    if let Some(t) = cli.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tolerance must be positive and finite, got {t}"));
        }
    }
    if cli.jobs == Some(0) {
        return Err("--jobs must be at least 1".into());
    }
    let ids = parse_ids(&cli.identity)?;
    let axes = GridAxes {
        q: cli.q.clone(),
        p: cli.p.clone(),
        m: cli.m.clone(),
        a: parse_list("a", &cli.a, str::parse::<ExactComplex>)?,
        b: parse_list("b", &cli.b, str::parse::<ExactComplex>)?,
        x: parse_list("x", &cli.x, str::parse::<RootOfUnity>)?,
        z: parse_list("fc-x", &cli.fc_x, str::parse::<ExactComplex>)?,
    };
    let mut points = Vec::new();
    for id in ids {
        let g = grid(id, &axes);
        if g.is_empty() {
            return Err(format!("{id}: the overridden grid is empty"));
        }
        for params in g {
            validate_params(id, &params).map_err(|e| format!("{id} {params}: {e}"))?;
            points.push((id, params));
        }
    }
    Ok(RunConfig {
        points,
        digits: cli.digits,
        tolerance: cli.tolerance,
        format: cli.format,
        out: cli.out.clone(),
        jobs: cli
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        timing: !cli.no_timing,
    })
}

/// Evaluates every point, `jobs` at a time, and returns the reports ordered
/// by identity and parameters.
pub fn run(cfg: &RunConfig) -> Vec<IdentityReport> {
    let ctx = PrecisionContext::with_digits(cfg.digits);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    let mut reports: Vec<IdentityReport> = pool.install(|| {
        cfg.points
            .par_iter()
            .map(|(id, params)| verify_with_tolerance(*id, params, &ctx, cfg.tolerance))
            .collect()
    });
    reports.sort_by(|a, b| (a.id, &a.params).cmp(&(b.id, &b.params)));
    reports
}

pub fn exit_status(reports: &[IdentityReport]) -> i32 {
    if reports.iter().all(|r| r.pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[derive(Debug, Serialize)]
struct ComplexOut {
    re: String,
    im: String,
}

fn part(c: &Option<ComplexOut>, re: bool) -> &str {
    c.as_ref()
        .map_or("", |c| if re { c.re.as_str() } else { c.im.as_str() })
}

fn complex_out(v: &Option<Cx>, digits: u32) -> Option<ComplexOut> {
    v.as_ref().map(|v| {
        let (re, im) = v.to_decimal(digits as usize);
        ComplexOut { re, im }
    })
}

#[derive(Debug, Serialize)]
struct Record {
    id: &'static str,
    params: BTreeMap<&'static str, String>,
    lhs: Option<ComplexOut>,
    rhs: Option<ComplexOut>,
    residual: Option<f64>,
    residual_mode: &'static str,
    tolerance: f64,
    class: &'static str,
    terms_used: usize,
    elapsed_ms: Option<f64>,
    pass: bool,
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    schema: &'static str,
    digits: u32,
    total: usize,
    failed: usize,
    records: &'a [Record],
}

fn record(r: &IdentityReport, digits: u32, timing: bool) -> Record {
    Record {
        id: r.id.name(),
        params: r.params.entries().into_iter().collect(),
        lhs: complex_out(&r.lhs, digits),
        rhs: complex_out(&r.rhs, digits),
        residual: r.residual,
        residual_mode: r.residual_mode.name(),
        tolerance: r.tolerance,
        class: r.class.name(),
        terms_used: r.terms_used,
        elapsed_ms: timing.then(|| (r.elapsed.as_secs_f64() * 1e6).round() / 1e3),
        pass: r.pass,
        error: r.error.clone(),
    }
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    schema: &'static str,
    id: &'static str,
    params: String,
    lhs_re: &'a str,
    lhs_im: &'a str,
    rhs_re: &'a str,
    rhs_im: &'a str,
    residual: Option<f64>,
    residual_mode: &'static str,
    tolerance: f64,
    class: &'static str,
    terms_used: usize,
    elapsed_ms: Option<f64>,
    pass: bool,
    error: &'a str,
}

/// Renders the reports in the requested format.
pub fn render(reports: &[IdentityReport], cfg: &RunConfig) -> String {
    let records: Vec<Record> = reports
        .iter()
        .map(|r| record(r, cfg.digits, cfg.timing))
        .collect();
    match cfg.format {
        Format::Json => {
            let report = Report {
                schema: SCHEMA,
                digits: cfg.digits,
                total: records.len(),
                failed: records.iter().filter(|r| !r.pass).count(),
                records: &records,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for (rec, rep) in records.iter().zip(reports) {
                w.serialize(CsvRow {
                    schema: SCHEMA,
                    id: rec.id,
                    params: rep.params.to_string(),
                    lhs_re: part(&rec.lhs, true),
                    lhs_im: part(&rec.lhs, false),
                    rhs_re: part(&rec.rhs, true),
                    rhs_im: part(&rec.rhs, false),
                    residual: rec.residual,
                    residual_mode: rec.residual_mode,
                    tolerance: rec.tolerance,
                    class: rec.class,
                    terms_used: rec.terms_used,
                    elapsed_ms: rec.elapsed_ms,
                    pass: rec.pass,
                    error: rec.error.as_deref().unwrap_or(""),
                })
                .expect("csv row");
            }
            String::from_utf8(w.into_inner().expect("csv buffer")).expect("utf-8 csv")
        }
    }
}

/// The `--list` catalog: one row per identity with its anchor and grid.
pub fn catalog() -> String {
    let mut out = String::new();
    for id in IdentityId::ALL {
        let g = grid(id, &GridAxes::default());
        let axes: Vec<&str> = g
            .first()
            .map(|p| p.entries().into_iter().map(|(k, _)| k).collect())
            .unwrap_or_default();
        let axes = if axes.is_empty() {
            "-".to_string()
        } else {
            axes.join(",")
        };
        out.push_str(&format!(
            "{:<12} {:>4} points [{}]  {}  ({})\n",
            id.name(),
            g.len(),
            axes,
            id.anchor(),
            id.description()
        ));
    }
    out
}

/// Runs the command line and returns the exit status.
pub fn main_with(cli: &Cli) -> i32 {
    if cli.list {
        print!("{}", catalog());
        return EXIT_PASS;
    }
    let cfg = match resolve(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("apery-verify: configuration error: {e}");
            return EXIT_CONFIG;
        }
    };
    let reports = run(&cfg);
    let text = render(&reports, &cfg);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("apery-verify: cannot write {}: {e}", path.display());
                return EXIT_CONFIG;
            }
        }
        None => print!("{text}"),
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!(
        "apery-verify: {} points, {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    );
    exit_status(&reports)
}
