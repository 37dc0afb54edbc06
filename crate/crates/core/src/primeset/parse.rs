//! Text shorthand for prime sets.
//!
//! ```text
//! spec   := set ('&' set)* (';' option)*
//! option := 'density=' float | 'bad=' ('count' | 'exclude')
//! set    := 'all' | 'finite:' list | 'cofinite:' list | 'ap:' a 'mod' q
//!         | 'beatty:' alpha | 'cyclotomic:' m ':' list | 'quadratic:' D ':' ('1' | '-1')
//!         | 'cycletype:' '[' coeffs ']' ':' '[' degrees ']'
//!         | 'langtrotter:' A ',' B ':' a [':cm'] | 'satotate:' A ',' B ':' angle ',' angle [':cm']
//! ```
//!
//! Angles accept `pi`, `pi/3`, `2pi/3`, `2*pi/3` or a plain float.

use std::f64::consts::PI;

use super::{BeattyAlpha, PrimeSetSpec, SetKind};
use crate::elliptic::{BadPrimes, Curve};
use crate::error::{Error, Result};

pub(super) fn parse(src: &str) -> Result<PrimeSetSpec> {
    let src = src.trim();
    if src.starts_with('{') {
        return serde_json::from_str(src).map_err(|e| Error::Parse(format!("prime set JSON: {e}")));
    }
    let mut parts = src.split(';');
    let body = parts.next().unwrap_or_default();
    let mut density = None;
    let mut bad = None;
    for opt in parts {
        let (key, val) = opt
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {opt:?}")))?;
        match key.trim() {
            "density" => density = Some(float(val)?),
            "bad" => {
                bad = Some(match val.trim() {
                    "count" => BadPrimes::CountReduction,
                    "exclude" => BadPrimes::Exclude,
                    other => return Err(Error::Parse(format!("unknown bad-prime policy {other:?}"))),
                })
            }
            other => return Err(Error::Parse(format!("unknown option {other:?}"))),
        }
    }
    let mut sets = body
        .split('&')
        .map(|s| single(s.trim(), bad))
        .collect::<Result<Vec<_>>>()?;
    let kind = if sets.len() == 1 {
        sets.pop().unwrap()
    } else {
        SetKind::Intersection {
            sets: sets.into_iter().map(PrimeSetSpec::from).collect(),
        }
    };
    Ok(PrimeSetSpec { kind, density })
}

fn single(s: &str, bad: Option<BadPrimes>) -> Result<SetKind> {
    let (head, rest) = s.split_once(':').unwrap_or((s, ""));
    let bad_primes = bad.unwrap_or_default();
    Ok(match head.trim().to_ascii_lowercase().as_str() {
        "all" if rest.is_empty() => SetKind::AllPrimes,
        "finite" => SetKind::Finite { primes: sorted(list(rest)?) },
        "cofinite" => SetKind::Cofinite {
            excluded: sorted(list(rest)?),
        },
        "ap" | "split" => {
            let (a, q) = rest
                .split_once("mod")
                .ok_or_else(|| Error::Parse(format!("expected a mod q, got {rest:?}")))?;
            SetKind::ArithmeticProgression {
                modulus: int(q)?,
                residue: int(a)?,
            }
        }
        "beatty" => SetKind::Beatty {
            alpha: BeattyAlpha::parse(rest.trim())?,
        },
        "cyclotomic" => {
            let (m, rs) = two(rest)?;
            SetKind::CyclotomicChebotarev {
                modulus: int(m)?,
                residues: list(rs)?,
            }
        }
        "quadratic" => {
            let (d, sym) = two(rest)?;
            SetKind::QuadraticChebotarev {
                discriminant: int(d)?,
                symbol: int(sym.trim_start_matches('+'))?,
            }
        }
        "cycletype" => {
            let (poly, pattern) = two(rest)?;
            SetKind::CycleType {
                poly: list(bracketed(poly)?)?,
                pattern: list(bracketed(pattern)?)?,
            }
        }
        "langtrotter" => {
            let fields: Vec<&str> = rest.split(':').collect();
            let (curve, tail) = curve_and_tail(&fields)?;
            let [trace] = tail else {
                return Err(Error::Parse(format!("expected langtrotter:A,B:a[:cm], got {s:?}")));
            };
            SetKind::LangTrotter {
                curve,
                trace: int(trace)?,
                bad_primes,
            }
        }
        "satotate" => {
            let fields: Vec<&str> = rest.split(':').collect();
            let (curve, tail) = curve_and_tail(&fields)?;
            let [interval] = tail else {
                return Err(Error::Parse(format!("expected satotate:A,B:lo,hi[:cm], got {s:?}")));
            };
            let (lo, hi) = interval
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected lo,hi, got {interval:?}")))?;
            SetKind::SatoTate {
                curve,
                lo: angle(lo)?,
                hi: angle(hi)?,
                bad_primes,
            }
        }
        _ => return Err(Error::Parse(format!("unknown prime set {s:?}"))),
    })
}

fn curve_and_tail<'a>(fields: &'a [&'a str]) -> Result<(Curve, &'a [&'a str])> {
    let (first, rest) = fields
        .split_first()
        .ok_or_else(|| Error::Parse("missing curve coefficients".into()))?;
    let (a, b) = first
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected A,B, got {first:?}")))?;
    let (cm, rest) = match rest.split_last() {
        Some((last, init)) if last.trim() == "cm" => (true, init),
        _ => (false, rest),
    };
    Ok((Curve::new(int(a)?, int(b)?, cm)?, rest))
}

fn two(s: &str) -> Result<(&str, &str)> {
    s.split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected two ':'-separated fields, got {s:?}")))
}

fn bracketed(s: &str) -> Result<&str> {
    s.trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))
}

fn int<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
}

fn float(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid number {s:?}")))
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(int).collect()
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `[k][*]pi[/n]` or a float.
pub fn angle(s: &str) -> Result<f64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    let Some((coef, denom)) = t.split_once("pi") else {
        return float(&t);
    };
    let coef = coef.trim_end_matches('*');
    let k = if coef.is_empty() { 1.0 } else { float(coef)? };
    let n = match denom {
        "" => 1.0,
        d => float(
            d.strip_prefix('/')
                .ok_or_else(|| Error::Parse(format!("invalid angle {s:?}")))?,
        )?,
    };
    let v = k * PI / n;
    // keep exact endpoints exact
    Ok(if (v - PI).abs() < 1e-15 { PI } else { v })
}

/// `kpi/n` when the angle is exactly what [`angle`] parses that to.
fn show_angle(v: f64) -> String {
    for n in 1..=12u32 {
        for k in 1..=n {
            if k as f64 * PI / n as f64 == v {
                let k = if k == 1 { String::new() } else { k.to_string() };
                return if n == 1 { format!("{k}pi") } else { format!("{k}pi/{n}") };
            }
        }
    }
    v.to_string()
}

pub(super) fn describe(spec: &PrimeSetSpec) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let mut out = match &spec.kind {
        SetKind::AllPrimes => "all".to_string(),
        SetKind::Finite { primes } => format!("finite:{}", join(primes)),
        SetKind::Cofinite { excluded } => format!("cofinite:{}", join(excluded)),
        SetKind::ArithmeticProgression { modulus, residue } => format!("ap:{residue}mod{modulus}"),
        SetKind::Beatty { alpha } => format!("beatty:{}", alpha.label()),
        SetKind::CyclotomicChebotarev { modulus, residues } => format!("cyclotomic:{modulus}:{}", join(residues)),
        SetKind::QuadraticChebotarev { discriminant, symbol } => format!("quadratic:{discriminant}:{symbol}"),
        SetKind::CycleType { poly, pattern } => format!("cycletype:{poly:?}:{pattern:?}").replace(' ', ""),
        SetKind::LangTrotter { curve, trace, .. } => {
            format!("langtrotter:{},{}:{trace}{}", curve.a, curve.b, if curve.cm { ":cm" } else { "" })
        }
        SetKind::SatoTate { curve, lo, hi, .. } => format!(
            "satotate:{},{}:{},{}{}",
            curve.a,
            curve.b,
            show_angle(*lo),
            show_angle(*hi),
            if curve.cm { ":cm" } else { "" }
        ),
        SetKind::Intersection { sets } => sets.iter().map(describe).collect::<Vec<_>>().join("&"),
    };
    if let Some(d) = spec.density {
        out.push_str(&format!(";density={d}"));
    }
    out
}
