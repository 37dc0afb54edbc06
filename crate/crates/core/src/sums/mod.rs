//! The Möbius sums over ideals with prescribed minimal prime.
//!
//! For a prime set `S`, `D(K, S)` is the set of distinguishable ideals (a
//! unique prime divisor of minimal norm) whose minimal prime lies in `S`. The
//! main quantity is
//!
//! ```text
//! S(X) = − Σ_{2 ≤ N(a) ≤ X, a ∈ D(K,S)} μ(a) / N(a)
//! ```
//!
//! which tends to `δ(S)`. Over ℚ it is computed by streaming a segmented
//! smallest-prime-factor sieve; over other fields by walking the ideals of
//! bounded norm. Both run segments in parallel and merge them in a fixed
//! order, so results do not depend on the number of worker threads.
//!
//! Primes excluded from `S` (ramified, or of bad reduction under
//! [`BadPrimes::Exclude`](crate::elliptic::BadPrimes)) count as outside `S`.

mod diagnostics;
mod duality;
mod enumerate;
mod rational;

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};

use crate::arith::CompensatedSum;
use crate::error::{Error, Result};
use crate::numfield::NumberField;
use crate::primeset::PrimeSetSpec;

pub use diagnostics::{density_diagnostics, DensityDiagnostics, DiagnosticRow};
pub use duality::{duality_sweep, duality_sweep_with, verify_duality, Duality, DualitySweep};
pub use enumerate::{partial_sum_enumerated, q_sum, q_sum_by_smooth_counts};

/// Which sum a trace holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumKind {
    /// `−Σ μ(a)/N(a)` over `D(K, S)`.
    MuOverNorm,
    /// `Σ μ(a)` over `D(K, S)`, unnormalized.
    MuIndicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub x: u64,
    pub value: f64,
    /// Bound on the floating-point error of `value`; zero for integer sums.
    pub error_bound: f64,
}

/// Values of a sum at increasing cut-offs `X₁ < X₂ < … < X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumTrace {
    pub kind: SumKind,
    pub field: String,
    pub set: PrimeSetSpec,
    /// `δ(S)` over the field, when known.
    pub density: Option<f64>,
    pub checkpoints: Vec<Checkpoint>,
}

impl SumTrace {
    pub fn last(&self) -> &Checkpoint {
        self.checkpoints.last().expect("a trace always ends at X")
    }

    pub fn value_at(&self, x: u64) -> Option<f64> {
        self.checkpoints.iter().find(|c| c.x == x).map(|c| c.value)
    }

    /// `value / X` at each checkpoint.
    pub fn ratios(&self) -> Vec<(u64, f64)> {
        self.checkpoints.iter().map(|c| (c.x, c.value / c.x as f64)).collect()
    }

    /// CSV with header `X,value,error_bound`. Values are written with 15
    /// decimals and bounds in 3-digit scientific notation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,value,error_bound\n");
        for c in &self.checkpoints {
            let _ = writeln!(out, "{},{:.15},{:.3e}", c.x, c.value, c.error_bound);
        }
        out
    }

    pub fn write_csv(&self, mut w: impl io::Write) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

/// Tuning knobs for the ℚ sieve path.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SumOptions {
    /// Sieve segment length; by default `X/64` clamped to `[2¹⁶, 2²⁰]`.
    pub segment_size: Option<usize>,
}

impl SumOptions {
    fn segment_size_for(&self, x: u64) -> usize {
        self.segment_size
            .unwrap_or_else(|| (x / 64).clamp(1 << 16, 1 << 20) as usize)
            .max(1)
    }
}

/// `S(Xᵢ)` at each checkpoint, with `X` itself always the last one.
pub fn partial_sum(field: &NumberField, set: &PrimeSetSpec, x: u64, checkpoints: &[u64]) -> Result<SumTrace> {
    partial_sum_with(field, set, x, checkpoints, SumOptions::default())
}

pub fn partial_sum_with(
    field: &NumberField,
    set: &PrimeSetSpec,
    x: u64,
    checkpoints: &[u64],
    opts: SumOptions,
) -> Result<SumTrace> {
    let cps = normalize_checkpoints(x, checkpoints)?;
    let buckets = if field.is_rational() {
        rational::bucket_sums(set, &cps, opts.segment_size_for(x))?
    } else {
        enumerate::bucket_sums(field, set, &cps)?
    };
    Ok(trace(SumKind::MuOverNorm, field, set, &cps, &buckets))
}

/// `Σ_{N(a) ≤ Xᵢ} μ(a)·1_D(a)` at each checkpoint.
pub fn mu_indicator_sum(field: &NumberField, set: &PrimeSetSpec, x: u64, checkpoints: &[u64]) -> Result<SumTrace> {
    let cps = normalize_checkpoints(x, checkpoints)?;
    let buckets = if field.is_rational() {
        rational::bucket_sums(set, &cps, SumOptions::default().segment_size_for(x))?
    } else {
        enumerate::bucket_sums(field, set, &cps)?
    };
    Ok(trace(SumKind::MuIndicator, field, set, &cps, &buckets))
}

/// Sorted, deduplicated checkpoints in `[2, X]`, ending at `X`.
pub fn normalize_checkpoints(x: u64, checkpoints: &[u64]) -> Result<Vec<u64>> {
    if x < 2 {
        return Err(Error::Domain(format!("sum limit X = {x} must be at least 2")));
    }
    if let Some(&bad) = checkpoints.iter().find(|&&c| c < 2 || c > x) {
        return Err(Error::Config(format!("checkpoint {bad} is outside [2, {x}]")));
    }
    let mut v = checkpoints.to_vec();
    v.push(x);
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Contributions of the ideals with norm in `(cps[i-1], cps[i]]`.
#[derive(Debug, Clone, Default)]
pub(crate) struct Bucket {
    pub mu_over_norm: CompensatedSum,
    pub mu: i64,
}

impl Bucket {
    #[inline]
    pub fn add(&mut self, mu: i8, norm: u64) {
        self.mu_over_norm.add(-(mu as f64) / norm as f64);
        self.mu += mu as i64;
    }

    pub fn merge(&mut self, other: &Bucket) {
        self.mu_over_norm.merge(&other.mu_over_norm);
        self.mu += other.mu;
    }
}

/// Adds per-chunk buckets into one row, in chunk order.
pub(crate) fn merge_buckets(n: usize, chunks: impl IntoIterator<Item = Vec<Bucket>>) -> Vec<Bucket> {
    let mut total = vec![Bucket::default(); n];
    for chunk in chunks {
        for (t, b) in total.iter_mut().zip(&chunk) {
            t.merge(b);
        }
    }
    total
}

fn trace(kind: SumKind, field: &NumberField, set: &PrimeSetSpec, cps: &[u64], buckets: &[Bucket]) -> SumTrace {
    let mut running = Bucket::default();
    let checkpoints = cps
        .iter()
        .zip(buckets)
        .map(|(&x, b)| {
            running.merge(b);
            match kind {
                SumKind::MuOverNorm => Checkpoint {
                    x,
                    value: running.mu_over_norm.total(),
                    error_bound: running.mu_over_norm.error_bound_with_term_rounding(),
                },
                SumKind::MuIndicator => Checkpoint {
                    x,
                    value: running.mu as f64,
                    error_bound: 0.0,
                },
            }
        })
        .collect();
    SumTrace {
        kind,
        field: field.name().to_string(),
        set: set.clone(),
        density: set.density_in(field),
        checkpoints,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primeset::BeattyAlpha;

    /// `−Σ μ(n)/n` over `2 ≤ n ≤ x` with smallest prime factor in `s`, by
    /// trial division.
    fn oracle(x: u64, in_s: impl Fn(u64) -> bool) -> f64 {
        let mut sum = 0.0;
        for n in 2..=x {
            let mut m = n;
            let mut mu = 1i64;
            let mut spf = 0;
            let mut d = 2;
            while d * d <= m {
                if m % d == 0 {
                    if spf == 0 {
                        spf = d;
                    }
                    m /= d;
                    if m % d == 0 {
                        mu = 0;
                        break;
                    }
                    mu = -mu;
                }
                d += 1;
            }
            if mu != 0 && m > 1 {
                mu = -mu;
                if spf == 0 {
                    spf = m;
                }
            }
            if mu != 0 && in_s(spf) {
                sum -= mu as f64 / n as f64;
            }
        }
        sum
    }

    #[test]
    fn beatty_pi_small_table() {
        let q = NumberField::rational();
        let s = PrimeSetSpec::beatty(BeattyAlpha::pi());
        let t = partial_sum(&q, &s, 10_000, &[10, 100, 1000]).unwrap();
        let expect = [(10, 0.33333), (100, 0.23915), (1000, 0.31849), (10_000, 0.34409)];
        for (c, (x, v)) in t.checkpoints.iter().zip(expect) {
            assert_eq!(c.x, x);
            assert!((c.value - v).abs() < 2e-5, "S({x}) = {}", c.value);
        }
    }

    #[test]
    fn finite_two_matches_oracle() {
        let q = NumberField::rational();
        let s = PrimeSetSpec::finite([2]);
        let t = partial_sum(&q, &s, 100, &[]).unwrap();
        assert!((t.last().value - oracle(100, |p| p == 2)).abs() < 1e-15);
    }

    #[test]
    fn segment_size_does_not_change_values_much() {
        let q = NumberField::rational();
        let s = PrimeSetSpec::arithmetic_progression(4, 1).unwrap();
        let a = partial_sum_with(&q, &s, 50_000, &[100, 10_000], SumOptions { segment_size: Some(997) }).unwrap();
        let b = partial_sum(&q, &s, 50_000, &[100, 10_000]).unwrap();
        for (x, y) in a.checkpoints.iter().zip(&b.checkpoints) {
            assert_eq!(x.x, y.x);
            assert!((x.value - y.value).abs() <= x.error_bound + y.error_bound);
        }
        let o = oracle(50_000, |p| p % 4 == 1);
        assert!((b.last().value - o).abs() < 1e-12);
    }

    #[test]
    fn mu_indicator_small() {
        let q = NumberField::rational();
        let t = mu_indicator_sum(&q, &PrimeSetSpec::all(), 10, &[]).unwrap();
        assert_eq!(t.last().value, -2.0);
        let t = mu_indicator_sum(&q, &PrimeSetSpec::finite([]), 1000, &[10, 100]).unwrap();
        assert!(t.checkpoints.iter().all(|c| c.value == 0.0));
    }

    #[test]
    fn checkpoints_are_validated() {
        assert_eq!(normalize_checkpoints(100, &[50, 10, 50]).unwrap(), vec![10, 50, 100]);
        assert!(normalize_checkpoints(100, &[101]).is_err());
        assert!(normalize_checkpoints(100, &[1]).is_err());
        assert!(normalize_checkpoints(1, &[]).is_err());
    }

    #[test]
    fn csv_layout() {
        let q = NumberField::rational();
        let t = partial_sum(&q, &PrimeSetSpec::all(), 10, &[2]).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("X,value,error_bound"));
        assert!(lines.next().unwrap().starts_with("2,0.500000000000000,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
