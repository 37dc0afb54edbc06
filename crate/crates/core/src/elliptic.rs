//! Trace of Frobenius `a_p = p + 1 − #E(F_p)` and Sato-Tate angles for
//! `E: y² = x³ + Ax + B` over ℚ.
//!
//! Below [`NAIVE_THRESHOLD`] the point count is the character sum
//! `p + 1 + Σₓ χ(x³ + Ax + B)` using a table of squares. Above it, the group
//! order is pinned inside the Hasse interval by baby-step/giant-step on random
//! points: each point's exact order is found and the lcm `L` of the orders
//! seen so far restricts `#E` to the multiples of `L` in the interval. When
//! points on `E` alone leave several candidates (the group may have small
//! exponent), points on the quadratic twist `E'` are used as well, via
//! `#E + #E' = 2p + 2`; for `p > 229` one of the two always has a point whose
//! order exceeds the interval width.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, inv_mod, legendre, mul_mod, pow_mod, primes_up_to};
use crate::error::{Error, Result};

/// Primes below this use the character-sum count.
pub const NAIVE_THRESHOLD: u64 = 1 << 16;

/// Short Weierstrass curve `y² = x³ + Ax + B` with declared CM status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    pub a: i64,
    pub b: i64,
    #[serde(default)]
    pub cm: bool,
}

impl Curve {
    pub fn new(a: i64, b: i64, cm: bool) -> Result<Self> {
        let c = Self { a, b, cm };
        if c.discriminant() == 0 {
            return Err(Error::Config(format!("y² = x³ + {a}x + {b} is singular")));
        }
        Ok(c)
    }

    /// `Δ = −16(4A³ + 27B²)`.
    pub fn discriminant(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        -16 * (4 * a * a * a + 27 * b * b)
    }

    /// Good reduction at the prime `p` for this model.
    pub fn is_good_prime(&self, p: u64) -> bool {
        self.discriminant() % p as i128 != 0
    }

    fn reduce(&self, p: u64) -> (u64, u64) {
        (
            self.a.rem_euclid(p as i64) as u64,
            self.b.rem_euclid(p as i64) as u64,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub p: u64,
    pub a_p: i64,
    pub theta: f64,
}

fn bad_prime(p: u64) -> Error {
    Error::ExcludedPrime {
        p,
        reason: "bad reduction",
    }
}

/// `a_p` for a good prime `p`, choosing the counting method by size.
pub fn trace_of_frobenius(curve: &Curve, p: u64) -> Result<i64> {
    if !curve.is_good_prime(p) {
        return Err(bad_prime(p));
    }
    let a_p = if p < NAIVE_THRESHOLD {
        trace_naive(curve, p)?
    } else {
        trace_bsgs(curve, p)?
    };
    if (a_p as i128) * (a_p as i128) > 4 * p as i128 {
        return Err(Error::Invariant(format!("Hasse bound violated: a_{p} = {a_p}")));
    }
    Ok(a_p)
}

/// `a_p = −Σₓ χ(x³ + Ax + B)` over all `x ∈ F_p`.
pub fn trace_naive(curve: &Curve, p: u64) -> Result<i64> {
    if !curve.is_good_prime(p) {
        return Err(bad_prime(p));
    }
    Ok(p as i64 + 1 - count_points(curve, p) as i64)
}

/// `#Ẽ(F_p)` for the reduction of the model: affine solutions (including a
/// singular point, if any) plus the point at infinity.
fn count_points(curve: &Curve, p: u64) -> u64 {
    let (a, b) = curve.reduce(p);
    let rhs = |x: u64| (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(a, x, p) + b) % p;
    if p == 2 {
        let affine = (0..2)
            .flat_map(|x| (0..2).map(move |y| (x, y)))
            .filter(|&(x, y)| y * y % 2 == rhs(x))
            .count() as u64;
        return affine + 1;
    }
    let mut square = vec![false; p as usize];
    for x in 0..p {
        square[mul_mod(x, x, p) as usize] = true;
    }
    let mut count = 1u64;
    for x in 0..p {
        let v = rhs(x);
        count += if v == 0 {
            1
        } else if square[v as usize] {
            2
        } else {
            0
        };
    }
    count
}

/// How elliptic prime sets treat primes of bad reduction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BadPrimes {
    /// Use `p + 1 − #Ẽ(F_p)` for the reduced (singular) model, which gives
    /// 0 or ±1 at bad primes of a minimal model.
    #[default]
    CountReduction,
    /// Leave bad primes out of the set altogether.
    Exclude,
}

/// `p + 1 − #Ẽ(F_p)` at any prime: the trace of Frobenius at good primes and
/// the point count of the singular reduction at bad ones.
pub fn reduction_trace(curve: &Curve, p: u64) -> Result<i64> {
    if curve.is_good_prime(p) {
        trace_of_frobenius(curve, p)
    } else {
        Ok(p as i64 + 1 - count_points(curve, p) as i64)
    }
}

type Point = Option<(u64, u64)>;

struct CurveFp {
    a: u64,
    b: u64,
    p: u64,
}

impl CurveFp {
    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(self.a, x, p) + self.b) % p
    }

    fn neg(&self, pt: Point) -> Point {
        pt.map(|(x, y)| (x, (self.p - y) % self.p))
    }

    fn add(&self, u: Point, v: Point) -> Point {
        let p = self.p;
        let ((x1, y1), (x2, y2)) = match (u, v) {
            (None, _) => return v,
            (_, None) => return u,
            (Some(s), Some(t)) => (s, t),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return None;
            }
            let num = (3 * mul_mod(x1, x1, p) + self.a) % p;
            mul_mod(num, inv_mod(2 * y1 % p, p)?, p)
        } else {
            let num = (y2 + p - y1) % p;
            mul_mod(num, inv_mod((x2 + p - x1) % p, p)?, p)
        };
        let x3 = (mul_mod(lambda, lambda, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
        Some((x3, y3))
    }

    fn mul(&self, mut k: u64, pt: Point) -> Point {
        let mut acc = None;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Point {
        loop {
            let x = rng.gen_range(0..self.p);
            let r = self.rhs(x);
            if r == 0 {
                return Some((x, 0));
            }
            if legendre(r as i64, self.p) == 1 {
                let y = sqrt_mod(r, self.p);
                return Some((x, if rng.gen::<bool>() { y } else { self.p - y }));
            }
        }
    }

    /// Some `m ∈ [lo, hi]` with `mP = O`, by baby-step/giant-step.
    fn annihilator(&self, pt: Point, lo: u64, hi: u64) -> Option<u64> {
        let width = hi - lo + 1;
        let m = (width as f64).sqrt().ceil() as u64;
        let mut baby: HashMap<(u64, u64), u64> = HashMap::with_capacity(m as usize);
        let mut cur = None;
        for j in 0..m {
            match cur {
                None if j > 0 => {
                    // order of P is j ≤ m; its multiples are the answers
                    return (lo.div_ceil(j) * j <= hi).then(|| lo.div_ceil(j) * j);
                }
                Some(c) => {
                    baby.entry(c).or_insert(j);
                }
                None => {}
            }
            cur = self.add(cur, pt);
        }
        let giant = self.neg(self.mul(m, pt));
        // R_i = (lo + i m) P; look for R_i = −jP
        let mut r = self.mul(lo, pt);
        let mut i = 0;
        while lo + i * m <= hi {
            let base = lo + i * m;
            if r.is_none() {
                return Some(base);
            }
            if let Some(&j) = self.neg(r).and_then(|q| baby.get(&q)) {
                if base + j <= hi {
                    return Some(base + j);
                }
            }
            r = self.add(r, self.neg(giant));
            i += 1;
        }
        None
    }

    fn order(&self, pt: Point, multiple: u64) -> u64 {
        let mut ord = multiple;
        for q in arith::prime_factors(multiple) {
            while ord.is_multiple_of(q) && self.mul(ord / q, pt).is_none() {
                ord /= q;
            }
        }
        ord
    }
}

/// Tonelli-Shanks square root of a quadratic residue modulo an odd prime.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z as i64, p) == -1).unwrap();
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

fn lcm(a: u64, b: u64) -> u64 {
    a / arith::gcd(a, b) * b
}

/// `a_p` by group-order determination in the Hasse interval.
pub fn trace_bsgs(curve: &Curve, p: u64) -> Result<i64> {
    if !curve.is_good_prime(p) {
        return Err(bad_prime(p));
    }
    if p < 5 {
        return trace_naive(curve, p);
    }
    let (a, b) = curve.reduce(p);
    let e = CurveFp { a, b, p };
    // twist by a non-residue d: y² = x³ + A d² x + B d³
    let d = (2..p).find(|&z| legendre(z as i64, p) == -1).unwrap();
    let d2 = mul_mod(d, d, p);
    let twist = CurveFp {
        a: mul_mod(a, d2, p),
        b: mul_mod(b, mul_mod(d2, d, p), p),
        p,
    };
    let bound = isqrt(4 * p);
    let (lo, hi) = (p + 1 - bound, p + 1 + bound);
    let seed = p ^ (curve.a as u64).rotate_left(17) ^ (curve.b as u64).rotate_left(41);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (mut l_curve, mut l_twist) = (1u64, 1u64);
    for round in 0..64 {
        let on_twist = round % 2 == 1 && round >= 4;
        let (c, l) = if on_twist {
            (&twist, &mut l_twist)
        } else {
            (&e, &mut l_curve)
        };
        let pt = c.random_point(&mut rng);
        let Some(m) = c.annihilator(pt, lo, hi) else {
            return Err(Error::Invariant(format!("no group order found in the Hasse interval at p = {p}")));
        };
        *l = lcm(*l, c.order(pt, m));
        let mut candidates = (lo.div_ceil(l_curve) * l_curve..=hi)
            .step_by(l_curve as usize)
            .filter(|n| (2 * p + 2 - n).is_multiple_of(l_twist));
        if let (Some(n), None) = (candidates.next(), candidates.next()) {
            return Ok(p as i64 + 1 - n as i64);
        }
    }
    // not reached in practice for p > 229
    trace_naive(curve, p)
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Sato-Tate angle `θ ∈ [0, π]` with `cos θ = a_p / (2√p)`.
pub fn theta_angle(a_p: i64, p: u64) -> Result<f64> {
    if (a_p as i128) * (a_p as i128) > 4 * p as i128 {
        return Err(Error::Invariant(format!("|a_p| = {} exceeds 2√{p}", a_p.abs())));
    }
    let c = (a_p as f64 / (2.0 * (p as f64).sqrt())).clamp(-1.0, 1.0);
    Ok(c.acos())
}

/// One record per good prime `p ≤ limit`, in increasing `p`.
pub fn batch_traces(curve: &Curve, limit: u64) -> Result<Vec<TraceRecord>> {
    if limit < 2 {
        return Err(Error::Domain("batch_traces needs X ≥ 2".into()));
    }
    if limit > crate::arith::DEFAULT_TABLE_BUDGET {
        return Err(Error::Resource {
            what: "trace batch",
            requested: limit,
            budget: crate::arith::DEFAULT_TABLE_BUDGET,
        });
    }
    primes_up_to(limit)
        .into_par_iter()
        .filter(|&p| curve.is_good_prime(p))
        .map(|p| {
            let a_p = trace_of_frobenius(curve, p)?;
            Ok(TraceRecord {
                p,
                a_p,
                theta: theta_angle(a_p, p)?,
            })
        })
        .collect()
}
