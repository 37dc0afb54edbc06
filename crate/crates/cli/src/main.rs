//! `minprime`: Möbius partial sums over ideals with prescribed minimal prime.

mod config;
mod report;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use minprime_core::primeset::SetKind;
use minprime_core::sums::{
    density_diagnostics, duality_sweep, duality_sweep_with, partial_sum_enumerated, q_sum, q_sum_by_smooth_counts,
};
use minprime_core::{partial_sum, sato_tate_measure, BadPrimes, Curve, Error, PrimeSetSpec, SumTrace};

use config::{ExperimentConfig, Flags, Format};

const EXIT_OTHER: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_PRECISION: u8 = 4;
const EXIT_CHECK_FAILED: u8 = 5;

#[derive(Parser)]
#[command(name = "minprime", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partial sums −Σ μ(a)/N(a) over ideals whose minimal prime lies in the set.
    Sum {
        #[command(flatten)]
        flags: Flags,
    },
    /// Run the identity and consistency checks up to --limit (default 10⁴).
    Verify {
        #[command(flatten)]
        flags: Flags,
        /// Use a deliberately wrong Möbius function; the checks must fail.
        #[arg(long, hide = true)]
        corrupt_mu: bool,
    },
    /// Partial sums over primes whose Sato-Tate angle lies in --interval.
    SatoTate {
        #[command(flatten)]
        flags: Flags,
    },
}

/// Some verification checks did not hold.
#[derive(Debug)]
struct ChecksFailed(usize);

impl std::fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for ChecksFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ChecksFailed>().is_some() {
        return EXIT_CHECK_FAILED;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Config(_) | Error::Parse(_) | Error::Domain(_)) => EXIT_CONFIG,
        Some(Error::Resource { .. }) => EXIT_RESOURCE,
        Some(Error::Precision { .. }) => EXIT_PRECISION,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sum { flags } => with_config(&flags, cmd_sum),
        Command::Verify { flags, corrupt_mu } => with_config(&flags, |c| cmd_verify(c, corrupt_mu)),
        Command::SatoTate { flags } => with_config(&flags, cmd_sato_tate),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("minprime: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Resolves the configuration and runs `f` on a pool of `--workers` threads.
fn with_config(flags: &Flags, f: impl FnOnce(&ExperimentConfig) -> anyhow::Result<()> + Send) -> anyhow::Result<()> {
    let cfg = ExperimentConfig::resolve(flags)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("starting worker threads")?;
    pool.install(|| f(&cfg))
}

fn emit(cfg: &ExperimentConfig, trace: &SumTrace, extra_rows: &[(String, String)]) -> anyhow::Result<()> {
    let csv = trace.to_csv();
    if let Some(path) = &cfg.out {
        fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    let text = match cfg.format {
        Format::Csv => csv,
        Format::Table => report::table(trace, extra_rows),
    };
    out(&text);
    Ok(())
}

fn cmd_sum(cfg: &ExperimentConfig) -> anyhow::Result<()> {
    let limit = cfg.require_limit()?;
    let set = PrimeSetSpec::parse(cfg.set.as_deref().unwrap_or("all"))?;
    let trace = partial_sum(&cfg.field, &set, limit, &cfg.checkpoints)?;
    emit(cfg, &trace, &[])
}

fn parse_curve(s: &str) -> anyhow::Result<Curve> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Config(format!("expected --curve A,B[,cm], got {s:?}"));
    let (a, b, cm) = match parts.as_slice() {
        [a, b] => (a, b, false),
        [a, b, "cm"] => (a, b, true),
        _ => return Err(bad().into()),
    };
    let a = a.parse().map_err(|_| bad())?;
    let b = b.parse().map_err(|_| bad())?;
    Ok(Curve::new(a, b, cm)?)
}

fn cmd_sato_tate(cfg: &ExperimentConfig) -> anyhow::Result<()> {
    let limit = cfg.require_limit()?;
    let curve = parse_curve(cfg.curve.as_deref().unwrap_or("-1,1"))?;
    let (lo, hi) = {
        let s = cfg.interval.as_deref().unwrap_or("pi/3,2pi/3");
        let (lo, hi) = s
            .split_once(',')
            .ok_or_else(|| Error::Config(format!("expected --interval lo,hi, got {s:?}")))?;
        (
            minprime_core::primeset::parse_angle(lo)?,
            minprime_core::primeset::parse_angle(hi)?,
        )
    };
    let bad_primes = match cfg.bad_primes.as_deref() {
        None | Some("count") => BadPrimes::CountReduction,
        Some("exclude") => BadPrimes::Exclude,
        Some(other) => return Err(Error::Config(format!("unknown bad-prime policy {other:?}")).into()),
    };
    let set = PrimeSetSpec::new(SetKind::SatoTate {
        curve,
        lo,
        hi,
        bad_primes,
    })?;
    let trace = partial_sum(&cfg.field, &set, limit, &cfg.checkpoints)?;
    let measure = sato_tate_measure(lo, hi)?;
    let rows = [("measure".to_string(), format!("{measure:.5}"))];
    emit(cfg, &trace, &rows)
}

fn cmd_verify(cfg: &ExperimentConfig, corrupt_mu: bool) -> anyhow::Result<()> {
    let limit = cfg.limit.unwrap_or(10_000);
    let sets: Vec<PrimeSetSpec> = match &cfg.set {
        Some(s) => vec![PrimeSetSpec::parse(s)?],
        None => ["all", "ap:1mod4", "finite:2,5"]
            .iter()
            .map(|s| PrimeSetSpec::parse(s))
            .collect::<Result<_, _>>()?,
    };
    let field = &cfg.field;
    let mut failed = 0;
    let mut report = |ok: bool, what: String| {
        out(&format!("{} {what}\n", if ok { "PASS" } else { "FAIL" }));
        failed += !ok as usize;
    };
    for set in &sets {
        let name = format!("{} {}", field.name(), set.describe());
        let sweep = if corrupt_mu {
            // every squarefree ideal gets μ = −1
            duality_sweep_with(field, set, limit, |a| if a.mobius() == 0 { 0 } else { -1 })?
        } else {
            duality_sweep(field, set, limit)?
        };
        report(
            sweep.passed(),
            format!(
                "duality {name}, N(a) ≤ {limit}: {} ideals, {} failures",
                sweep.checked,
                sweep.failures.len()
            ),
        );

        let (a, b) = (q_sum(field, set, limit)?, q_sum_by_smooth_counts(field, set, limit)?);
        report(a == b, format!("Q_S two-path {name}, X = {limit}: {a} and {b}"));

        if field.is_rational() {
            let s = partial_sum(field, set, limit, &[])?;
            let e = partial_sum_enumerated(field, set, limit, &[])?;
            let (x, y) = (s.last(), e.last());
            report(
                (x.value - y.value).abs() <= x.error_bound + y.error_bound + 1e-15,
                format!("sieve vs enumeration {name}, X = {limit}: {:.15} and {:.15}", x.value, y.value),
            );
        }

        match density_diagnostics(field, set, limit, &diagnostic_grid(limit)) {
            Ok(d) => {
                let ok = d
                    .rows
                    .windows(2)
                    .all(|w| w[0].e_s <= w[1].e_s && w[0].v_s_grid_proxy >= w[1].v_s_grid_proxy);
                let last = d.rows.last().expect("grid ends at X");
                report(
                    ok,
                    format!(
                        "diagnostics {name}: π_S = {}, δ·Li = {:.2}, e_S = {:.2}, v_S (grid proxy) = {:.3e}",
                        last.pi_s, last.delta_li, last.e_s, last.v_s_grid_proxy
                    ),
                );
            }
            Err(Error::Config(msg)) => out(&format!("SKIP diagnostics {name}: {msg}\n")),
            Err(e) => return Err(e.into()),
        }
    }
    if failed > 0 {
        return Err(ChecksFailed(failed).into());
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn out(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

/// Roughly ten points per decade up to `x`.
fn diagnostic_grid(x: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (3..)
        .map(|i| 10f64.powf(i as f64 / 10.0) as u64)
        .take_while(|&g| g < x)
        .filter(|&g| g >= 2)
        .collect();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves() {
        assert_eq!(parse_curve("-1,1").unwrap(), Curve::new(-1, 1, false).unwrap());
        assert!(parse_curve("-1,0,cm").unwrap().cm);
        assert!(parse_curve("0,0").is_err());
        assert!(parse_curve("1").is_err());
    }

    #[test]
    fn grid_is_increasing() {
        let g = diagnostic_grid(10_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(*g.last().unwrap() < 10_000);
    }
}
