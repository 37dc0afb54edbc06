//! Dense univariate polynomials over a prime field `F_p` and their
//! factorization: squarefree decomposition, distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting with a seeded PRNG.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, mul_mod};

/// Seed for equal-degree splitting; mixed with `p` so every prime gets its
/// own, reproducible stream.
const EDF_SEED: u64 = 0x6d69_6e70_7269_6d65;

/// Polynomial over `F_p`, coefficients from the constant term up, no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = Self { coeffs };
        f.trim();
        f
    }

    /// Reduces integer coefficients (constant term first) modulo `p`.
    pub fn from_integers(coeffs: &[i64], p: u64) -> Self {
        let v = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        Self::from_coeffs(v, p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        Self::from_coeffs(v, p)
    }

    pub fn sub(&self, other: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Self::from_coeffs(v, p)
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_coeffs(v, p)
    }

    pub fn scale(&self, k: u64, p: u64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| mul_mod(c, k, p)).collect(), p)
    }

    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = inv_mod(self.lead(), p).expect("nonzero leading coefficient over a field");
        self.scale(inv, p)
    }

    /// Quotient and remainder; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self, p: u64) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let inv = inv_mod(divisor.lead(), p).expect("nonzero leading coefficient over a field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.deg() - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv, p);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mul_mod(c, d, p)) % p;
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot, p), Self::from_coeffs(rem, p))
    }

    pub fn rem(&self, divisor: &Self, p: u64) -> Self {
        self.div_rem(divisor, p).1
    }

    pub fn div_exact(&self, divisor: &Self, p: u64) -> Self {
        let (q, r) = self.div_rem(divisor, p);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn derivative(&self, p: u64) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        Self::from_coeffs(v, p)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self, p: u64) -> Self {
        let mut base = self.rem(m, p);
        let mut acc = Self::one().rem(m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(m, p);
            }
            base = base.mul(&base, p).rem(m, p);
            e >>= 1;
        }
        acc
    }

    /// `g` with `g(x)^p = self`, assuming only powers `x^{kp}` occur.
    fn pth_root(&self, p: u64) -> Self {
        // over F_p the Frobenius fixes coefficients
        let step = p as usize;
        let v = self.coeffs.iter().step_by(step).copied().collect();
        Self::from_coeffs(v, p)
    }
}

/// Squarefree decomposition of a monic polynomial: `f = Π gᵢ^{mᵢ}` with the
/// `gᵢ` squarefree, pairwise coprime and monic.
pub fn squarefree_decomposition(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative(p);
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root(p), p) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d, p);
    let mut w = f.div_exact(&c, p);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c, p);
        let fac = w.div_exact(&y, p);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w, p);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.pth_root(p), p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs of
/// (product of all irreducible factors of degree d, d).
pub fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x();
    let mut h = x.rem(&rest, p);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(p as u128, &rest, p);
        let g = rest.gcd(&h.sub(&x, p), p);
        if !g.is_one() {
            rest = rest.div_exact(&g, p);
            h = h.rem(&rest, p);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let k = rest.deg();
        out.push((rest, k));
    }
    out
}

/// Splits a product of distinct irreducibles of common degree `d`.
pub fn equal_degree(f: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a = FpPoly::from_coeffs((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.deg() == 0 {
            continue;
        }
        let candidate = if p == 2 {
            // trace map a + a² + … + a^{2^{d−1}}
            let mut t = a.rem(f, p);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t, p).rem(f, p);
                acc = acc.add(&t, p);
            }
            acc
        } else {
            // a^{(p^d − 1)/2} = (a · a^p ⋯ a^{p^{d−1}})^{(p−1)/2}
            let mut t = a.rem(f, p);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(p as u128, f, p);
                norm = norm.mul(&t, p).rem(f, p);
            }
            norm.pow_mod(((p - 1) / 2) as u128, f, p).sub(&FpPoly::one(), p)
        };
        let g = f.gcd(&candidate, p);
        if !g.is_one() && g.deg() < n {
            let h = f.div_exact(&g, p);
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic polynomial into monic irreducibles with
/// multiplicities, sorted by (degree, factor).
pub fn factor(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ p);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(&f.monic(p), p) {
        for (h, d) in distinct_degree(&g, p) {
            for irr in equal_degree(&h, d, p, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.cmp(b)));
    out
}

/// Factorization pattern of an integer polynomial (constant term first) mod
/// `p`: one `(degree, multiplicity)` pair per irreducible factor, sorted.
pub fn factor_poly_mod_p(coeffs: &[i64], p: u64) -> Vec<(usize, u32)> {
    let f = FpPoly::from_integers(coeffs, p);
    let mut v: Vec<(usize, u32)> = factor(&f, p).into_iter().map(|(g, m)| (g.deg(), m)).collect();
    v.sort_unstable();
    v
}
