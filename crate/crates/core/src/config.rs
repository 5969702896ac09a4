//! Run configuration shared by the command-line subcommands.
//!
//! Settings come from four layers, later ones winning: built-in defaults,
//! a flat `key=value` file, the `QOSC_TOL_OVERRIDE` environment variable
//! (tolerances only) and command-line flags.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::check::{Group, Tolerances};
use crate::qnum::{CasimirKind, Regime};

/// Environment variable with `NAME=VALUE[,NAME=VALUE…]` tolerance overrides.
pub const TOL_ENV_VAR: &str = "QOSC_TOL_OVERRIDE";

/// Largest number of grid points a range may expand to.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Malformed configuration (exit code 1).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{source_name}:{line}: {message}")]
    File {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::Invalid(format!("unknown format '{other}' (expected csv or json)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Accepts `real`/`circle` plus a few spellings seen in the wild.
pub fn parse_regime(s: &str) -> Result<Regime, ConfigError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "real" | "real-positive" | "realpositive" => Ok(Regime::RealPositive),
        "circle" | "unit-circle" | "unitcircle" | "complex" => Ok(Regime::UnitCircle),
        other => Err(ConfigError::Invalid(format!("unknown regime '{other}' (expected real or circle)"))),
    }
}

/// `cq`, `cqprime` or `both`.
pub fn parse_casimir(s: &str) -> Result<Vec<CasimirKind>, ConfigError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "cq" => Ok(vec![CasimirKind::Cq]),
        "cqprime" | "cq'" | "cq_prime" => Ok(vec![CasimirKind::CqPrime]),
        "both" => Ok(CasimirKind::ALL.to_vec()),
        other => Err(ConfigError::Invalid(format!(
            "unknown Casimir '{other}' (expected cq, cqprime or both)"
        ))),
    }
}

/// Inclusive grid `A:B:STEP`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn single(x: f64) -> Self {
        GridSpec {
            start: x,
            stop: x,
            step: 1.0,
        }
    }

    /// Points `A + k·STEP` up to `B`, computed from the index so the last
    /// point does not drift.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for GridSpec {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let bad = |why: &str| ConfigError::Invalid(format!("invalid grid '{s}': {why}"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |p: &str| p.parse::<f64>().map_err(|_| bad("not a number"));
        let grid = match parts.as_slice() {
            [x] => GridSpec::single(num(x)?),
            [a, b, step] => GridSpec {
                start: num(a)?,
                stop: num(b)?,
                step: num(step)?,
            },
            _ => return Err(bad("expected A:B:STEP or a single value")),
        };
        if ![grid.start, grid.stop, grid.step].iter().all(|x| x.is_finite()) {
            return Err(bad("values must be finite"));
        }
        if grid.step <= 0.0 {
            return Err(bad("STEP must be positive"));
        }
        if grid.stop < grid.start {
            return Err(bad("B must not be below A"));
        }
        if (grid.stop - grid.start) / grid.step >= MAX_GRID_POINTS as f64 {
            return Err(bad("too many points"));
        }
        Ok(grid)
    }
}

/// Validated settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub regime: Regime,
    /// `None` means the subcommand default.
    pub w: Option<GridSpec>,
    /// `None` means the subcommand default.
    pub casimir: Option<Vec<CasimirKind>>,
    pub n_max: Option<u32>,
    pub l_max: Option<u32>,
    pub format: OutputFormat,
    pub out: Option<String>,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            regime: Regime::RealPositive,
            w: None,
            casimir: None,
            n_max: None,
            l_max: None,
            format: OutputFormat::Csv,
            out: None,
            tolerances: Tolerances::default(),
        }
    }
}

fn parse_u32(key: &str, v: &str) -> Result<u32, ConfigError> {
    v.trim()
        .parse()
        .map_err(|_| ConfigError::Invalid(format!("{key} must be a non-negative integer, got '{v}'")))
}

fn tol_error(e: crate::Error) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

impl RunConfig {
    /// Sets one key. Keys are the long flag names; `_` and `-` are
    /// interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let (key, value) = (key.trim(), value.trim());
        match key.replace('_', "-").as_str() {
            "regime" => self.regime = parse_regime(value)?,
            "w" => self.w = Some(GridSpec::single(value.parse().map_err(|_| {
                ConfigError::Invalid(format!("w must be a number, got '{value}'"))
            })?)),
            "w-range" => self.w = Some(value.parse()?),
            "casimir" => self.casimir = Some(parse_casimir(value)?),
            "nmax" | "n-max" => self.n_max = Some(parse_u32("nmax", value)?),
            "lmax" | "l-max" => self.l_max = Some(parse_u32("lmax", value)?),
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(value.to_string()),
            "tol" => self.tolerances.apply_overrides(value).map_err(tol_error)?,
            _ => {
                // bare group names are accepted as tolerance keys
                if key.parse::<Group>().is_ok() {
                    let v: f64 = value
                        .parse()
                        .map_err(|_| ConfigError::Invalid(format!("tolerance {key} must be a number")))?;
                    self.tolerances.set(key, v).map_err(tol_error)?;
                } else {
                    return Err(ConfigError::Invalid(format!("unknown key '{key}'")));
                }
            }
        }
        Ok(())
    }

    /// Applies a flat `key=value` file. Blank lines and `#` comments are
    /// skipped.
    pub fn apply_file(&mut self, text: &str, source_name: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |message: String| ConfigError::File {
                source_name: source_name.to_string(),
                line: i + 1,
                message,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| at("expected key=value".to_string()))?;
            self.set(k, v).map_err(|e| at(e.to_string()))?;
        }
        Ok(())
    }

    /// Applies the tolerance override string from the environment.
    pub fn apply_env_tolerances(&mut self, value: &str) -> Result<(), ConfigError> {
        self.tolerances
            .apply_overrides(value)
            .map_err(|e| ConfigError::Invalid(format!("{TOL_ENV_VAR}: {e}")))
    }
}
