//! Experiment configuration: command-line flags merged over an optional TOML
//! file with the same keys.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use minprime_core::{Error, NumberField};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Table,
}

/// A count written as `1000000`, `1e6`, `10^6` or `1_000_000`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Count {
    Int(u64),
    Float(f64),
    Text(String),
}

/// Checkpoints as a TOML array or in the flag syntax.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CountList {
    List(Vec<Count>),
    Text(String),
}

/// Keys accepted in a config file; each mirrors the flag of the same name.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    set: Option<String>,
    field: Option<PathBuf>,
    limit: Option<Count>,
    checkpoints: Option<CountList>,
    curve: Option<String>,
    interval: Option<String>,
    bad_primes: Option<String>,
    workers: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// TOML file with any of the keys below; flags take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Prime set, e.g. `beatty:pi`, `ap:1mod4`, `quadratic:5:1 & beatty:e;density=0.159`.
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// Number field description file (TOML); ℚ if omitted.
    #[arg(long, value_name = "FILE")]
    pub field: Option<PathBuf>,
    /// Largest norm X, e.g. `1e6`.
    #[arg(long)]
    pub limit: Option<String>,
    /// Comma-separated cut-offs; `10,100,...,1e6` continues the progression.
    #[arg(long)]
    pub checkpoints: Option<String>,
    /// Elliptic curve `A,B` for y² = x³ + Ax + B, with `,cm` if it has CM.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Sato-Tate interval `lo,hi`, e.g. `pi/3,2pi/3`.
    #[arg(long)]
    pub interval: Option<String>,
    /// Treatment of primes of bad reduction: `count` (trace of the reduction) or `exclude`.
    #[arg(long, value_name = "POLICY")]
    pub bad_primes: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the CSV trace to this file.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// What to print on stdout.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Fully resolved configuration.
#[derive(Debug)]
pub struct ExperimentConfig {
    pub set: Option<String>,
    pub field: NumberField,
    pub limit: Option<u64>,
    pub checkpoints: Vec<u64>,
    pub curve: Option<String>,
    pub interval: Option<String>,
    pub bad_primes: Option<String>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn resolve(flags: &Flags) -> anyhow::Result<Self> {
        let (file, base) = match &flags.config {
            Some(path) => {
                let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let file: FileConfig = toml::from_str(&src)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                (file, path.parent().map(Path::to_path_buf))
            }
            None => (FileConfig::default(), None),
        };
        // relative paths in a config file are relative to the file
        let rebase = |p: PathBuf| match &base {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p,
        };

        let field_path = flags.field.clone().or_else(|| file.field.map(rebase));
        let field = match &field_path {
            Some(p) => NumberField::from_file(p)?,
            None => NumberField::rational(),
        };
        let limit = match (&flags.limit, file.limit) {
            (Some(s), _) => Some(parse_count(s)?),
            (None, Some(c)) => Some(count_value(&c)?),
            (None, None) => None,
        };
        let checkpoints = match (&flags.checkpoints, file.checkpoints) {
            (Some(s), _) => parse_checkpoints(s)?,
            (None, Some(CountList::Text(s))) => parse_checkpoints(&s)?,
            (None, Some(CountList::List(v))) => v.iter().map(count_value).collect::<anyhow::Result<_>>()?,
            (None, None) => Vec::new(),
        };
        let workers = flags.workers.or(file.workers);
        if workers == Some(0) {
            bail!(Error::Config("worker count must be at least 1".into()));
        }
        if let Some(x) = limit {
            if let Some(&c) = checkpoints.iter().find(|&&c| c < 2 || c > x) {
                bail!(Error::Config(format!("checkpoint {c} is outside [2, {x}]")));
            }
        }
        Ok(Self {
            set: flags.set.clone().or(file.set),
            field,
            limit,
            checkpoints,
            curve: flags.curve.clone().or(file.curve),
            interval: flags.interval.clone().or(file.interval),
            bad_primes: flags.bad_primes.clone().or(file.bad_primes),
            workers,
            out: flags.out.clone().or_else(|| file.out.map(rebase)),
            format: flags.format.or(file.format).unwrap_or_default(),
        })
    }

    pub fn require_limit(&self) -> anyhow::Result<u64> {
        self.limit
            .ok_or_else(|| Error::Config("--limit is required".into()).into())
    }
}

fn count_value(c: &Count) -> anyhow::Result<u64> {
    match c {
        Count::Int(n) => Ok(*n),
        Count::Float(x) if x.fract() == 0.0 && *x >= 0.0 && *x < u64::MAX as f64 => Ok(*x as u64),
        Count::Float(x) => Err(Error::Config(format!("{x} is not a non-negative integer")).into()),
        Count::Text(s) => parse_count(s),
    }
}

/// Parses `1000000`, `1_000_000`, `1e6`, `2.5e3` or `10^6`.
pub fn parse_count(s: &str) -> anyhow::Result<u64> {
    let t: String = s.trim().chars().filter(|&c| c != '_').collect();
    let bad = || Error::Config(format!("{s:?} is not a non-negative integer"));
    if let Ok(n) = t.parse::<u64>() {
        return Ok(n);
    }
    if let Some((b, e)) = t.split_once('^') {
        let b: u64 = b.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        return Ok(b.checked_pow(e).ok_or_else(bad)?);
    }
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        let e: i32 = e.parse().map_err(|_| bad())?;
        let (int, frac) = m.split_once('.').unwrap_or((m, ""));
        let digits = format!("{int}{frac}");
        let shift = e - frac.len() as i32;
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || shift < 0 {
            bail!(bad());
        }
        let base: u64 = digits.parse().map_err(|_| bad())?;
        return Ok(10u64
            .checked_pow(shift as u32)
            .and_then(|p| base.checked_mul(p))
            .ok_or_else(bad)?);
    }
    bail!(bad())
}

/// Comma-separated counts; a `...` entry continues the progression set by
/// the two entries before it up to the entry after it. The progression is
/// geometric when `b/a` is an integer and the final entry is `a·(b/a)ᵏ`,
/// arithmetic otherwise.
pub fn parse_checkpoints(s: &str) -> anyhow::Result<Vec<u64>> {
    let tokens: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    let mut out: Vec<u64> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i] == "..." {
            let (Some(&b), Some(end)) = (out.last(), tokens.get(i + 1)) else {
                bail!(Error::Config(format!("`...` needs two values before it and one after: {s:?}")));
            };
            let Some(&a) = out.len().checked_sub(2).map(|j| &out[j]) else {
                bail!(Error::Config(format!("`...` needs two values before it: {s:?}")));
            };
            let end = parse_count(end)?;
            if b <= a || end < b {
                bail!(Error::Config(format!("`...` needs an increasing progression: {s:?}")));
            }
            let next: Box<dyn Fn(u64) -> Option<u64>> = if on_geometric(a, b, end) {
                let r = b / a;
                Box::new(move |v| v.checked_mul(r))
            } else {
                let d = b - a;
                Box::new(move |v| v.checked_add(d))
            };
            let mut v = next(b);
            while let Some(x) = v.filter(|&x| x < end) {
                out.push(x);
                v = next(x);
            }
            i += 1;
            continue;
        }
        out.push(parse_count(tokens[i])?);
        i += 1;
    }
    Ok(out)
}

fn on_geometric(a: u64, b: u64, end: u64) -> bool {
    if a == 0 || !b.is_multiple_of(a) {
        return false;
    }
    let r = b / a;
    let mut v = b;
    while v < end {
        match v.checked_mul(r) {
            Some(n) => v = n,
            None => return false,
        }
    }
    v == end
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("2.5e3").unwrap(), 2500);
        assert_eq!(parse_count("10^7").unwrap(), 10_000_000);
        assert_eq!(parse_count("1_000").unwrap(), 1000);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("1e-3").is_err());
        assert!(parse_count("-4").is_err());
        assert!(parse_count("1e30").is_err());
    }

    #[test]
    fn checkpoint_lists() {
        assert_eq!(parse_checkpoints("10,100,...,1e6").unwrap(), vec![10, 100, 1000, 10_000, 100_000, 1_000_000]);
        assert_eq!(parse_checkpoints("100, 200, ..., 500").unwrap(), vec![100, 200, 300, 400, 500]);
        assert_eq!(parse_checkpoints("5,7,...,12").unwrap(), vec![5, 7, 9, 11, 12]);
        assert_eq!(parse_checkpoints("3,1e3").unwrap(), vec![3, 1000]);
        assert_eq!(parse_checkpoints("2,4,...,64").unwrap(), vec![2, 4, 8, 16, 32, 64]);
        assert_eq!(parse_checkpoints("2,4,...,10").unwrap(), vec![2, 4, 6, 8, 10]);
        assert!(parse_checkpoints("10,...,100").is_err());
        assert!(parse_checkpoints("10,100,...").is_err());
    }

    #[test]
    fn toml_floats_as_counts() {
        let c: FileConfig = toml::from_str("limit = 1e6\ncheckpoints = [1e3, 10000, \"1e5\"]\n").unwrap();
        assert_eq!(count_value(c.limit.as_ref().unwrap()).unwrap(), 1_000_000);
        let Some(CountList::List(list)) = &c.checkpoints else { panic!("expected a list") };
        let v: Vec<u64> = list.iter().map(|c| count_value(c).unwrap()).collect();
        assert_eq!(v, vec![1000, 10_000, 100_000]);
        let bad: FileConfig = toml::from_str("limit = 2.5\n").unwrap();
        assert!(count_value(bad.limit.as_ref().unwrap()).is_err());
    }
}
