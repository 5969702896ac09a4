//! Command-line front end.
//!
//! [`run`] parses arguments, layers the configuration, dispatches to a
//! subcommand and returns the process exit code. Output is written to the
//! given sinks so the whole front end can be driven from tests.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use thiserror::Error;

use crate::angular::spherical_harmonic;
use crate::check::{run_checks, CheckPoints, Group};
use crate::config::{ConfigError, GridSpec, OutputFormat, RunConfig};
use crate::observables::quadrupole_moment;
use crate::qnum::{CasimirKind, QParam, Regime};
use crate::radial::{alpha_roots, radial_wavefunction, RadialState, RootBranch};
use crate::spectrum::{enumerate_levels, figure_data, Figure};
use crate::table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

const SPECTRUM_DEFAULT_NMAX: u32 = 3;
const SPECTRUM_DEFAULT_LMAX: u32 = 4;
const QUADRUPOLE_DEFAULT_NMAX: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "qosc", version, about = "su_q(2)-invariant 3D harmonic oscillator")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Values stay strings here and go
/// through [`RunConfig::set`], so file and flag spellings agree.
#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// Flat key=value file; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Deformation regime: real (q = e^w) or circle (q = e^{iw}).
    #[arg(long, global = true, value_name = "real|circle")]
    pub regime: Option<String>,
    /// Single deformation parameter.
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "w_range")]
    pub w: Option<String>,
    /// Inclusive sweep A:B:STEP.
    #[arg(long = "w-range", global = true, value_name = "A:B:STEP", allow_hyphen_values = true)]
    pub w_range: Option<String>,
    /// Casimir operator: cq, cqprime or both.
    #[arg(long, global = true)]
    pub casimir: Option<String>,
    /// Highest radial quantum number n
    #[arg(long, global = true)]
    pub nmax: Option<String>,
    /// Highest angular momentum l
    #[arg(long, global = true)]
    pub lmax: Option<String>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<String>,
    /// Tolerance override NAME=VALUE (repeatable).
    #[arg(long, global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels, sorted by energy.
    Spectrum,
    /// ψ = (S/r)·Y on an (r, θ, φ) grid.
    Wavefunction(WavefunctionArgs),
    /// Quadrupole moments of the l = 0 states.
    Quadrupole,
    /// Tidy data (w, curve, value) for one of the four spectrum/quadrupole figures.
    Figures(FigureArgs),
    /// Invariant suite; exit 3 if any group fails.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m: i32,
    /// Root branch: plus or minus.
    #[arg(long, default_value = "plus")]
    pub branch: String,
    #[arg(long, default_value = "0:4:0.5", value_name = "A:B:STEP")]
    pub r: String,
    #[arg(long, default_value = "1", value_name = "A:B:STEP")]
    pub theta: String,
    #[arg(long, default_value = "0", value_name = "A:B:STEP")]
    pub phi: String,
    /// Print the harmonic's term list as JSON instead of the grid.
    #[arg(long)]
    pub harmonic_json: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// 1, 2, 3, 4 or fig1 … fig4.
    pub figure: Figure,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Run only these groups (repeatable); all groups by default.
    #[arg(long = "group", value_name = "NAME")]
    pub groups: Vec<Group>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Domain(#[from] crate::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0} check group(s) failed")]
    CheckFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
        }
    }
}

/// Defaults, then the config file, then the environment override, then flags.
pub fn build_config(common: &CommonArgs, env_tol: Option<&str>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        cfg.apply_file(&text, &path.display().to_string())?;
    }
    if let Some(env) = env_tol {
        cfg.apply_env_tolerances(env)?;
    }
    let flags = [
        ("regime", &common.regime),
        ("w", &common.w),
        ("w-range", &common.w_range),
        ("casimir", &common.casimir),
        ("nmax", &common.nmax),
        ("lmax", &common.lmax),
        ("format", &common.format),
        ("out", &common.out),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    for t in &common.tol {
        cfg.set("tol", t)?;
    }
    Ok(cfg)
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, env_tol: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, env_tol, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, env_tol: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let cfg = build_config(&cli.common, env_tol)?;
    let output = match &cli.command {
        Command::Spectrum => render(&cmd_spectrum(&cfg, stderr)?, cfg.format),
        Command::Wavefunction(args) => cmd_wavefunction(&cfg, args)?,
        Command::Quadrupole => render(&cmd_quadrupole(&cfg, stderr)?, cfg.format),
        Command::Figures(args) => render(&cmd_figures(&cfg, args.figure), cfg.format),
        Command::Check(args) => {
            let (text, failed) = cmd_check(&cfg, args)?;
            emit(&cfg, &text, stdout)?;
            return if failed == 0 { Ok(()) } else { Err(CliError::CheckFailed(failed)) };
        }
    };
    emit(&cfg, &output, stdout)
}

fn render(table: &Table, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    }
}

fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("cannot write {path}: {e}")))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

/// `f` over `items` on scoped threads, results in input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = items.len().div_ceil(threads).max(1);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

fn default_grid(regime: Regime) -> GridSpec {
    match regime {
        Regime::RealPositive => GridSpec::single(0.0),
        Regime::UnitCircle => GridSpec::single(0.5),
    }
}

/// Screens every grid point. A single bad point is a domain error; in a
/// sweep it is skipped with a note on stderr.
fn params(cfg: &RunConfig, grid: GridSpec, stderr: &mut dyn Write) -> Result<Vec<QParam>, CliError> {
    let points = grid.points();
    if points.len() == 1 {
        return Ok(vec![QParam::new(cfg.regime, points[0])?]);
    }
    let mut out = Vec::with_capacity(points.len());
    for w in points {
        match QParam::new(cfg.regime, w) {
            Ok(qp) => out.push(qp),
            Err(e) => writeln!(stderr, "skipping w = {w}: {e}")?,
        }
    }
    Ok(out)
}

pub fn cmd_spectrum(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<Table, CliError> {
    let grid = cfg.w.unwrap_or_else(|| default_grid(cfg.regime));
    let sweep = grid.points().len() > 1;
    let qps = params(cfg, grid, stderr)?;
    let kinds = cfg.casimir.clone().unwrap_or_else(|| CasimirKind::ALL.to_vec());
    let n_max = cfg.n_max.unwrap_or(SPECTRUM_DEFAULT_NMAX);
    let l_max = cfg.l_max.unwrap_or(SPECTRUM_DEFAULT_LMAX);

    let mut cols = vec!["n", "l", "kind", "branch", "alpha", "energy"];
    if sweep {
        cols.insert(0, "w");
    }
    let mut table = Table::new(cols);
    let per_w = par_map(&qps, |qp| {
        kinds
            .iter()
            .flat_map(|&k| enumerate_levels(n_max, l_max, k, qp))
            .collect::<Vec<_>>()
    });
    for (qp, levels) in qps.iter().zip(per_w) {
        for lv in levels {
            let mut row: Vec<Cell> = vec![
                lv.n.into(),
                lv.l.into(),
                lv.kind.to_string().into(),
                lv.branch.to_string().into(),
                lv.alpha.into(),
                lv.energy.into(),
            ];
            if sweep {
                row.insert(0, qp.w().into());
            }
            table.push(row);
        }
    }
    Ok(table)
}

fn parse_branch(s: &str) -> Result<RootBranch, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "plus" | "+" => Ok(RootBranch::Plus),
        "minus" | "-" => Ok(RootBranch::Minus),
        other => Err(CliError::Usage(format!("unknown branch '{other}' (expected plus or minus)"))),
    }
}

fn single_kind(cfg: &RunConfig) -> Result<CasimirKind, CliError> {
    match cfg.casimir.as_deref() {
        None => Ok(CasimirKind::Cq),
        Some([k]) => Ok(*k),
        Some(_) => Err(CliError::Usage("wavefunction needs a single --casimir (cq or cqprime)".into())),
    }
}

pub fn cmd_wavefunction(cfg: &RunConfig, args: &WavefunctionArgs) -> Result<String, CliError> {
    let grid = cfg.w.unwrap_or_else(|| default_grid(cfg.regime));
    let w = match grid.points().as_slice() {
        [w] => *w,
        _ => return Err(CliError::Usage("wavefunction takes a single --w".into())),
    };
    let qp = QParam::new(cfg.regime, w)?;
    let kind = single_kind(cfg)?;
    let branch = parse_branch(&args.branch)?;
    let state = RadialState::new(args.n, args.l, kind, branch, &qp)?;
    let y = spherical_harmonic(args.l, args.m, &qp)?;
    if args.harmonic_json {
        let mut s = serde_json::to_string_pretty(&y).expect("harmonic serializes");
        s.push('\n');
        return Ok(s);
    }
    let rs = args.r.parse::<GridSpec>()?.points();
    let thetas = args.theta.parse::<GridSpec>()?.points();
    let phis = args.phi.parse::<GridSpec>()?.points();
    if rs[0] < 0.0 {
        return Err(CliError::Usage("r grid must be non-negative".into()));
    }
    let mut table = Table::new(["r", "theta", "phi", "re_psi", "im_psi"]);
    for &r in &rs {
        let radial = if r == 0.0 { 0.0 } else { radial_wavefunction(&state, r) / r };
        for &theta in &thetas {
            for &phi in &phis {
                // S(0) = 0; keep the sign of zero stable
                let psi = if radial == 0.0 { Complex64::new(0.0, 0.0) } else { y.evaluate(theta, phi)? * radial };
                table.push(vec![r.into(), theta.into(), phi.into(), psi.re.into(), psi.im.into()]);
            }
        }
    }
    Ok(render(&table, cfg.format))
}

fn default_quadrupole_grid(regime: Regime) -> GridSpec {
    match regime {
        Regime::RealPositive => GridSpec {
            start: 0.0,
            stop: 3.0,
            step: 0.25,
        },
        Regime::UnitCircle => GridSpec {
            start: 0.1,
            stop: 3.0,
            step: 0.1,
        },
    }
}

pub fn cmd_quadrupole(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<Table, CliError> {
    let grid = cfg.w.unwrap_or_else(|| default_quadrupole_grid(cfg.regime));
    let qps = params(cfg, grid, stderr)?;
    let kinds = cfg.casimir.clone().unwrap_or_else(|| CasimirKind::ALL.to_vec());
    let n_max = cfg.n_max.unwrap_or(QUADRUPOLE_DEFAULT_NMAX);
    let rows = par_map(&qps, |qp| {
        let mut rows = Vec::new();
        for &kind in &kinds {
            for (branch, _) in alpha_roots(0, kind, qp) {
                for n in 0..=n_max {
                    // every branch listed by alpha_roots is admissible
                    let q = quadrupole_moment(n, kind, branch, qp).expect("admissible l = 0 state");
                    rows.push(vec![
                        qp.w().into(),
                        n.into(),
                        kind.to_string().into(),
                        branch.to_string().into(),
                        q.radial_part.into(),
                        q.angular_part.into(),
                        q.value.into(),
                    ]);
                }
            }
        }
        rows
    });
    let mut table = Table::new(["w", "n", "kind", "branch", "radial", "angular", "value"]);
    for row in rows.into_iter().flatten() {
        table.push(row);
    }
    Ok(table)
}

/// Default abscissae: `(0, 3]` for the real figures, `(0, π)` in steps of
/// 0.02 on the unit circle.
pub fn default_figure_grid(figure: Figure) -> GridSpec {
    match figure.regime() {
        Regime::RealPositive => GridSpec {
            start: 0.02,
            stop: 3.0,
            step: 0.02,
        },
        Regime::UnitCircle => GridSpec {
            start: 0.02,
            stop: 3.12,
            step: 0.02,
        },
    }
}

/// The figure fixes the regime; `--regime` is ignored here.
pub fn cmd_figures(cfg: &RunConfig, figure: Figure) -> Table {
    let grid = cfg.w.unwrap_or_else(|| default_figure_grid(figure)).points();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunks: Vec<&[f64]> = grid.chunks(grid.len().div_ceil(threads).max(1)).collect();
    let parts = par_map(&chunks, |c| figure_data(figure, c));
    let mut table = Table::new(["w", "curve", "value"]);
    for part in parts {
        for row in part.rows() {
            table.push(row.clone());
        }
    }
    table
}

/// Runs the suite; returns the report text and the number of failed groups.
pub fn cmd_check(cfg: &RunConfig, args: &CheckArgs) -> Result<(String, usize), CliError> {
    let mut pts = CheckPoints::default();
    if let Some(grid) = cfg.w {
        pts.params = grid
            .points()
            .into_iter()
            .map(|w| QParam::new(cfg.regime, w))
            .collect::<Result<_, _>>()?;
    }
    if let Some(l) = cfg.l_max {
        pts.l_max = l;
    }
    if let Some(n) = cfg.n_max {
        pts.n_max = n;
    }
    let groups = if args.groups.is_empty() { Group::ALL.to_vec() } else { args.groups.clone() };
    let reports = run_checks(&groups, &cfg.tolerances, &pts);
    let mut text = String::new();
    let mut failed = 0;
    for r in &reports {
        text.push_str(&format!("{r}\n"));
        if !r.passed() {
            failed += 1;
            for f in r.failures.iter().take(5) {
                text.push_str(&format!("    {f}\n"));
            }
            if r.failures.len() > 5 {
                text.push_str(&format!("    … {} more\n", r.failures.len() - 5));
            }
        }
    }
    Ok((text, failed))
}
