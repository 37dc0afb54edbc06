//! Brute-force oracles shared by the integration suites. Nothing here calls
//! into the library's own arithmetic.

#![allow(dead_code)]

use num_bigint::BigInt;

/// `(μ(n), smallest prime factor)` by trial division, for `n ≥ 2`.
pub fn mu_spf(n: u64) -> (i64, u64) {
    let mut m = n;
    let mut mu = 1i64;
    let mut spf = 0;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            if spf == 0 {
                spf = d;
            }
            m /= d;
            if m.is_multiple_of(d) {
                return (0, spf);
            }
            mu = -mu;
        }
        d += 1;
    }
    if m > 1 {
        mu = -mu;
        if spf == 0 {
            spf = m;
        }
    }
    (mu, spf)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && mu_spf(n).1 == n
}

/// Running values of `−Σ_{2 ≤ n ≤ X} μ(n)/n` over `n` whose smallest prime
/// factor satisfies `in_s`, for every `X` in `2..=limit`.
pub fn divisor_oracle(limit: u64, in_s: impl Fn(u64) -> bool) -> Vec<f64> {
    let mut sum = 0.0;
    (2..=limit)
        .map(|n| {
            let (mu, p) = mu_spf(n);
            if mu != 0 && in_s(p) {
                sum -= mu as f64 / n as f64;
            }
            sum
        })
        .collect()
}

/// `⌊π · 10^digits⌋` from Machin's formula `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi_scaled(digits: u32) -> BigInt {
    let guard = 10u32;
    let one = BigInt::from(10).pow(digits + guard);
    let atan_inv = |x: u64| {
        let x2 = BigInt::from(x * x);
        let mut term = &one / BigInt::from(x);
        let mut sum = BigInt::from(0);
        let mut k = 0u64;
        while term != BigInt::from(0) {
            let t = &term / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    pi / BigInt::from(10).pow(guard)
}

/// Members `⌊nπ⌋ ≤ limit` of the Beatty sequence of π, computed with 60
/// digits of π.
pub fn beatty_pi_members(limit: u64) -> Vec<u64> {
    let scale = BigInt::from(10).pow(60);
    let pi = pi_scaled(60);
    (1..)
        .map(|n: u64| {
            let v: BigInt = (&pi * BigInt::from(n)) / &scale;
            u64::try_from(v).unwrap()
        })
        .take_while(|&m| m <= limit)
        .collect()
}

/// Number of affine solutions of `y² = x³ + ax + b` over `F_p`.
pub fn affine_points(a: i64, b: i64, p: u64) -> u64 {
    let p_i = p as i64;
    let mut squares = vec![0u64; p as usize];
    for y in 0..p {
        squares[((y * y) % p) as usize] += 1;
    }
    (0..p_i)
        .map(|x| {
            let r = ((x * x % p_i * x + a.rem_euclid(p_i) * x + b.rem_euclid(p_i)) % p_i).rem_euclid(p_i);
            squares[r as usize]
        })
        .sum()
}

/// `p − #affine points`: the trace of Frobenius at good primes, and the
/// trace of the singular reduction at bad ones.
pub fn brute_trace(a: i64, b: i64, p: u64) -> i64 {
    p as i64 - affine_points(a, b, p) as i64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
