//! Segmented smallest-prime-factor sieve.
//!
//! A table covers `[lo, hi)` and stores, for every `n` in range, its smallest
//! prime factor and its Möbius value. Both come out of one pass over the base
//! primes `p ≤ √(hi − 1)`: each multiple of `p` records `p` if it has no factor
//! yet, flips its Möbius sign and multiplies `p` into a running radical. After
//! the pass, an entry whose radical falls short of `n` (and is not already
//! known to be non-squarefree) has exactly one prime factor above the base
//! bound, which flips the sign once more.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Entries per segment when iterating a long range.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 22;

/// Largest range a single table may cover.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 28;

/// Largest value a table may reach; spf entries are stored as `u32`.
const MAX_HI: u64 = 1 << 32;

/// All primes `≤ limit`, by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::with_capacity(limit / 10 + 8);
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
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

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfTable {
    lo: u64,
    hi: u64,
    spf: Vec<u32>,
    mu: Vec<i8>,
    segment_size: usize,
}

impl SpfTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.spf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spf.is_empty()
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    fn check(&self, n: u64) -> Result<usize> {
        if n < self.lo || n >= self.hi {
            return Err(Error::Range {
                n,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok((n - self.lo) as usize)
    }

    /// Smallest prime factor of `n`; `None` for `n < 2`.
    pub fn spf(&self, n: u64) -> Result<Option<u64>> {
        let i = self.check(n)?;
        Ok(match self.spf[i] {
            0 => None,
            p => Some(p as u64),
        })
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        Ok(self.spf(n)? == Some(n))
    }

    /// Möbius value of `n` (no table lookup for `n = 1`).
    pub fn mobius(&self, n: u64) -> Result<i8> {
        if n == 1 {
            return Ok(1);
        }
        let i = self.check(n)?;
        Ok(self.mu[i])
    }

    /// `(n, spf(n), μ(n))` for every `n ≥ 2` in range.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64, i8)> + '_ {
        self.spf
            .iter()
            .zip(&self.mu)
            .enumerate()
            .filter(|(_, (&p, _))| p != 0)
            .map(move |(i, (&p, &m))| (self.lo + i as u64, p as u64, m))
    }
}

/// Möbius value of `n` read from `table`; `n = 1` needs no table.
pub fn mobius(n: u64, table: &SpfTable) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("μ(0) is undefined".into()));
    }
    table.mobius(n)
}

/// Single-block table over `[lo, hi)` with the default budget.
pub fn sieve_spf(lo: u64, hi: u64) -> Result<SpfTable> {
    sieve_spf_with_budget(lo, hi, DEFAULT_TABLE_BUDGET)
}

pub fn sieve_spf_with_budget(lo: u64, hi: u64, budget: u64) -> Result<SpfTable> {
    validate_range(lo, hi)?;
    if hi - lo > budget {
        return Err(Error::Resource {
            what: "spf table",
            requested: hi - lo,
            budget,
        });
    }
    let base = primes_up_to(isqrt(hi - 1));
    Ok(sieve_block(lo, hi, &base, (hi - lo) as usize))
}

fn validate_range(lo: u64, hi: u64) -> Result<()> {
    if lo < 1 || lo >= hi {
        return Err(Error::Domain(format!("sieve range [{lo}, {hi}) must satisfy 1 ≤ lo < hi")));
    }
    if hi > MAX_HI {
        return Err(Error::Resource {
            what: "spf table upper bound",
            requested: hi,
            budget: MAX_HI,
        });
    }
    Ok(())
}

/// Sieve `[lo, hi)` given every prime `≤ √(hi − 1)` in `base`.
fn sieve_block(lo: u64, hi: u64, base: &[u64], segment_size: usize) -> SpfTable {
    let len = (hi - lo) as usize;
    let mut spf = vec![0u32; len];
    let mut mu = vec![1i8; len];
    let mut radical = vec![1u32; len];

    for &p in base {
        if p >= hi {
            break;
        }
        let first = lo.div_ceil(p).max(1) * p;
        let mut n = first;
        while n < hi {
            let i = (n - lo) as usize;
            if spf[i] == 0 {
                spf[i] = p as u32;
            }
            mu[i] = -mu[i];
            radical[i] *= p as u32;
            n += p;
        }
        let sq = p * p;
        let mut n = lo.div_ceil(sq) * sq;
        while n < hi {
            mu[(n - lo) as usize] = 0;
            n += sq;
        }
    }

    for i in 0..len {
        let n = lo + i as u64;
        if n < 2 {
            spf[i] = 0;
            mu[i] = if n == 1 { 1 } else { 0 };
            continue;
        }
        if spf[i] == 0 {
            // no base prime divides n, so n is prime
            spf[i] = n as u32;
            mu[i] = -1;
        } else if mu[i] != 0 && radical[i] as u64 != n {
            mu[i] = -mu[i];
        }
    }

    SpfTable {
        lo,
        hi,
        spf,
        mu,
        segment_size,
    }
}

/// Splits `[lo, hi)` into consecutive tables of at most `segment_size` entries.
///
/// Segments are independent once the base primes are known; [`SegmentedSieve::segment`]
/// can be called from any thread.
#[derive(Debug, Clone)]
pub struct SegmentedSieve {
    lo: u64,
    hi: u64,
    segment_size: usize,
    base: Arc<Vec<u64>>,
}

impl SegmentedSieve {
    pub fn new(lo: u64, hi: u64, segment_size: usize) -> Result<Self> {
        validate_range(lo, hi)?;
        if segment_size == 0 {
            return Err(Error::Config("segment size must be positive".into()));
        }
        if segment_size as u64 > DEFAULT_TABLE_BUDGET {
            return Err(Error::Resource {
                what: "sieve segment",
                requested: segment_size as u64,
                budget: DEFAULT_TABLE_BUDGET,
            });
        }
        let base = Arc::new(primes_up_to(isqrt(hi - 1)));
        Ok(Self {
            lo,
            hi,
            segment_size,
            base,
        })
    }

    pub fn segment_count(&self) -> usize {
        (self.hi - self.lo).div_ceil(self.segment_size as u64) as usize
    }

    pub fn segment_bounds(&self, k: usize) -> (u64, u64) {
        let a = self.lo + k as u64 * self.segment_size as u64;
        (a, (a + self.segment_size as u64).min(self.hi))
    }

    pub fn segment(&self, k: usize) -> SpfTable {
        let (a, b) = self.segment_bounds(k);
        sieve_block(a, b, &self.base, self.segment_size)
    }

    pub fn iter(&self) -> impl Iterator<Item = SpfTable> + '_ {
        (0..self.segment_count()).map(move |k| self.segment(k))
    }
}
