//! Beatty membership `m ∈ {⌊αn⌋ : n ≥ 1}` in guarded fixed point.
//!
//! `α` is held as `A = ⌊α · 2¹⁹²⌋` together with a bound `E` on the
//! representation error in units of `2⁻¹⁹²`. For a candidate `n` the true
//! `αn · 2¹⁹²` lies in `[An − En, An + En]`; membership is decided only when
//! that whole interval falls on one side of `m · 2¹⁹²` and `(m + 1) · 2¹⁹²`.
//! Otherwise the caller gets [`Error::Precision`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const FRAC_BITS: u32 = 192;

/// 256-bit unsigned, little-endian limbs; the top limb is the integer part.
type U256 = [u64; 4];
type U320 = [u64; 5];

const NAMED: &[(&str, &str)] = &[
    (
        "pi",
        "3.14159265358979323846264338327950288419716939937510582097494459230781640628620",
    ),
    (
        "e",
        "2.718281828459045235360287471352662497757247093699959574966967627724076630353547",
    ),
    (
        "sqrt2",
        "1.414213562373095048801688724209698078569671875376948073176679737990732478462107",
    ),
];

/// A real `α > 1` in 192-bit fixed point with an explicit error bound.
#[derive(Clone, PartialEq)]
pub struct BeattyAlpha {
    label: String,
    scaled: U256,
    err: U256,
    approx: f64,
}

impl fmt::Debug for BeattyAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BeattyAlpha({} ≈ {})", self.label, self.approx)
    }
}

impl fmt::Display for BeattyAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn to_limbs(x: &BigUint) -> Result<U256> {
    let digits = x.to_u64_digits();
    if digits.len() > 4 {
        return Err(Error::Domain("Beatty α must be below 2⁶⁴".into()));
    }
    let mut out = [0u64; 4];
    out[..digits.len()].copy_from_slice(&digits);
    Ok(out)
}

impl BeattyAlpha {
    /// Parses `"pi"`, `"e"`, `"sqrt2"`, or a decimal literal, optionally
    /// followed by `@digits` declaring `|α − literal| ≤ 10^−digits`. Without
    /// `@`, the number of fractional digits written is the declared accuracy.
    pub fn parse(src: &str) -> Result<Self> {
        let src = src.trim();
        if let Some((_, lit)) = NAMED.iter().find(|(name, _)| *name == src) {
            let mut a = Self::from_decimal(lit, None)?;
            a.label = src.to_string();
            return Ok(a);
        }
        let (lit, digits) = match src.split_once('@') {
            Some((l, d)) => {
                let d: u32 = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad precision in Beatty literal `{src}`")))?;
                (l.trim(), Some(d))
            }
            None => (src, None),
        };
        let mut a = Self::from_decimal(lit, digits)?;
        a.label = src.to_string();
        Ok(a)
    }

    pub fn pi() -> Self {
        Self::parse("pi").expect("built-in constant")
    }

    fn from_decimal(lit: &str, declared: Option<u32>) -> Result<Self> {
        let bad = || Error::Parse(format!("`{lit}` is not a decimal literal"));
        let (int_part, frac_part) = lit.split_once('.').unwrap_or((lit, ""));
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let k = frac_part.len() as u32;
        let digits = declared.unwrap_or(k);
        let numer: BigUint = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
        let ten_k = BigUint::from(10u32).pow(k);
        let one = BigUint::from(1u32) << FRAC_BITS;
        let scaled = (&numer << FRAC_BITS) / &ten_k;
        if scaled <= one {
            return Err(Error::Domain(format!("Beatty α = {lit} must exceed 1")));
        }
        // ⌈2¹⁹² / 10^digits⌉ for the declared accuracy, +1 for the floor above
        let ten_d = BigUint::from(10u32).pow(digits);
        let err = (&one + &ten_d - 1u32) / &ten_d + 1u32;
        let approx: f64 = lit.parse().map_err(|_| bad())?;
        Ok(Self {
            label: lit.to_string(),
            scaled: to_limbs(&scaled)?,
            err: to_limbs(&err)?,
            approx,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// Membership of `m ≥ 1`, or a precision error when undecidable.
    pub fn contains(&self, m: u64) -> Result<bool> {
        beatty_contains(self, m)
    }
}

impl Serialize for BeattyAlpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label)
    }
}

impl<'de> Deserialize<'de> for BeattyAlpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BeattyAlpha::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn mul_small(a: &U256, n: u64) -> U320 {
    let mut out = [0u64; 5];
    let mut carry = 0u128;
    for i in 0..4 {
        let t = a[i] as u128 * n as u128 + carry;
        out[i] = t as u64;
        carry = t >> 64;
    }
    out[4] = carry as u64;
    out
}

fn add(a: &U320, b: &U320) -> U320 {
    let mut out = [0u64; 5];
    let mut carry = false;
    for i in 0..5 {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        out[i] = s2;
        carry = c1 || c2;
    }
    out
}

/// `a − b`, saturating at zero.
fn sub_sat(a: &U320, b: &U320) -> U320 {
    if cmp(a, b) == Ordering::Less {
        return [0; 5];
    }
    let mut out = [0u64; 5];
    let mut borrow = false;
    for i in 0..5 {
        let (d1, b1) = a[i].overflowing_sub(b[i]);
        let (d2, b2) = d1.overflowing_sub(borrow as u64);
        out[i] = d2;
        borrow = b1 || b2;
    }
    out
}

fn cmp(a: &U320, b: &U320) -> Ordering {
    for i in (0..5).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// `m · 2¹⁹²` as a 320-bit value.
fn shifted(m: u128) -> U320 {
    [0, 0, 0, m as u64, (m >> 64) as u64]
}

enum Verdict {
    In,
    Out,
    Unknown,
}

fn classify(alpha: &BeattyAlpha, n: u64, m: u64) -> Verdict {
    let center = mul_small(&alpha.scaled, n);
    let spread = mul_small(&alpha.err, n);
    let lo = sub_sat(&center, &spread);
    let hi = add(&center, &spread);
    let floor_lo = shifted(m as u128);
    let floor_hi = shifted(m as u128 + 1);
    let lo_in = cmp(&lo, &floor_lo) != Ordering::Less && cmp(&lo, &floor_hi) == Ordering::Less;
    let hi_in = cmp(&hi, &floor_lo) != Ordering::Less && cmp(&hi, &floor_hi) == Ordering::Less;
    if lo_in && hi_in {
        Verdict::In
    } else if cmp(&hi, &floor_lo) == Ordering::Less || cmp(&lo, &floor_hi) != Ordering::Less {
        Verdict::Out
    } else {
        Verdict::Unknown
    }
}

/// True iff `⌊αn⌋ = m` for some `n ≥ 1`.
///
/// Only `n` near `m/α` can qualify; each candidate is classified with the
/// guard band, and an undecided candidate makes the whole answer a
/// [`Error::Precision`].
pub fn beatty_contains(alpha: &BeattyAlpha, m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::Domain("Beatty membership needs m ≥ 1".into()));
    }
    if m >= 1 << 52 {
        return Err(Error::Domain("Beatty membership supports m < 2⁵²".into()));
    }
    let a = alpha.approx;
    let first = ((m as f64 / a).floor() as u64).saturating_sub(1).max(1);
    let last = ((m as f64 + 1.0) / a).ceil() as u64 + 1;
    let mut undecided = false;
    for n in first..=last {
        match classify(alpha, n, m) {
            Verdict::In => return Ok(true),
            Verdict::Out => {}
            Verdict::Unknown => undecided = true,
        }
    }
    if undecided {
        Err(Error::Precision { m })
    } else {
        Ok(false)
    }
}
