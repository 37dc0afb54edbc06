use std::f64::consts::PI;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Invariants entering the analytic class number formula. Each is declared
/// by the user; nothing here is computed from the polynomial.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassInvariants {
    pub r1: Option<u32>,
    pub r2: Option<u32>,
    pub class_number: Option<u64>,
    pub roots_of_unity: Option<u64>,
    pub regulator: Option<f64>,
    pub abs_discriminant: Option<u64>,
}

/// A monogenic number field `K = ℚ[x]/(f)` with `O_K = ℤ[θ]` (declared).
#[derive(Debug, Clone, PartialEq)]
pub struct NumberField {
    name: String,
    /// Defining polynomial, constant term first; monic.
    poly: Vec<i64>,
    invariants: ClassInvariants,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    name: Option<String>,
    /// Leading coefficient first, as written by hand.
    polynomial: Vec<i64>,
    #[serde(default)]
    invariants: ClassInvariants,
}

impl NumberField {
    /// `ℚ`, defined by `x`, with `c_ℚ = 1`.
    pub fn rational() -> Self {
        Self {
            name: "Q".into(),
            poly: vec![0, 1],
            invariants: ClassInvariants {
                r1: Some(1),
                r2: Some(0),
                class_number: Some(1),
                roots_of_unity: Some(2),
                regulator: Some(1.0),
                abs_discriminant: Some(1),
            },
        }
    }

    /// `ℚ(i)`, defined by `x² + 1`.
    pub fn gaussian() -> Self {
        Self {
            name: "Q(i)".into(),
            poly: vec![1, 0, 1],
            invariants: ClassInvariants {
                r1: Some(0),
                r2: Some(1),
                class_number: Some(1),
                roots_of_unity: Some(4),
                regulator: Some(1.0),
                abs_discriminant: Some(4),
            },
        }
    }

    /// Builds a field from a monic polynomial (constant term first).
    pub fn new(name: impl Into<String>, poly: Vec<i64>, invariants: ClassInvariants) -> Result<Self> {
        let mut poly = poly;
        while poly.len() > 1 && poly.last() == Some(&0) {
            poly.pop();
        }
        if poly.len() < 2 {
            return Err(Error::Config("defining polynomial must have degree ≥ 1".into()));
        }
        if poly.last() != Some(&1) {
            return Err(Error::Config("defining polynomial must be monic".into()));
        }
        let degree = poly.len() as u32 - 1;
        if let (Some(r1), Some(r2)) = (invariants.r1, invariants.r2) {
            if r1 + 2 * r2 != degree {
                return Err(Error::Config(format!(
                    "signature (r1, r2) = ({r1}, {r2}) does not match degree {degree}"
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            poly,
            invariants,
        })
    }

    /// Parses the TOML field description (see the README for the grammar).
    pub fn from_toml_str(src: &str) -> Result<Self> {
        let file: FieldFile = toml::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        let mut poly = file.polynomial;
        poly.reverse();
        Self::new(file.name.unwrap_or_else(|| "K".into()), poly, file.invariants)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let src = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Config(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_toml_str(&src)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poly(&self) -> &[i64] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn invariants(&self) -> &ClassInvariants {
        &self.invariants
    }

    /// Discriminant of the defining polynomial, `(−1)^{n(n−1)/2} Res(f, f')`.
    pub fn poly_discriminant(&self) -> BigInt {
        poly_discriminant(&self.poly)
    }

    /// Residue of `ζ_K` at `s = 1` by the analytic class number formula.
    pub fn residue(&self) -> Result<f64> {
        let inv = &self.invariants;
        let missing = |what: &str| Error::Config(format!("field {} lacks invariant `{what}`", self.name));
        let r1 = inv.r1.ok_or_else(|| missing("r1"))?;
        let r2 = inv.r2.ok_or_else(|| missing("r2"))?;
        let h = inv.class_number.ok_or_else(|| missing("class_number"))?;
        let w = inv.roots_of_unity.ok_or_else(|| missing("roots_of_unity"))?;
        let reg = inv.regulator.ok_or_else(|| missing("regulator"))?;
        let disc = inv.abs_discriminant.ok_or_else(|| missing("abs_discriminant"))?;
        if w == 0 || disc == 0 || h == 0 || reg <= 0.0 {
            return Err(Error::Config("class number formula invariants must be positive".into()));
        }
        Ok(2f64.powi(r1 as i32) * (2.0 * PI).powi(r2 as i32) * reg * h as f64
            / (w as f64 * (disc as f64).sqrt()))
    }
}

/// `c_K = 2^{r1} (2π)^{r2} Reg h / (w √|D_K|)`.
pub fn residue_ck(field: &NumberField) -> Result<f64> {
    field.residue()
}

fn poly_discriminant(poly: &[i64]) -> BigInt {
    let n = poly.len() - 1;
    if n == 1 {
        return BigInt::from(1);
    }
    let f: Vec<BigInt> = poly.iter().rev().map(|&c| BigInt::from(c)).collect();
    let df: Vec<BigInt> = poly
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .map(|(i, &c)| BigInt::from(c) * i as i64)
        .collect();
    // Sylvester matrix of f (degree n) and f' (degree n−1), size 2n−1
    let size = 2 * n - 1;
    let mut m = vec![vec![BigInt::from(0); size]; size];
    for r in 0..n - 1 {
        for (j, c) in f.iter().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in df.iter().enumerate() {
            m[n - 1 + r][r + j] = c.clone();
        }
    }
    let res = bareiss_det(m);
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    // f is monic, so no division by the leading coefficient
    res * sign
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let zero = BigInt::from(0);
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k] == zero {
            match (k + 1..n).find(|&r| m[r][k] != zero) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}
