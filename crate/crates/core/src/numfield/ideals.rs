use crate::arith::SegmentedSieve;
use crate::error::{Error, Result};
use crate::primeset::{Membership, PrimeSetSpec};

use super::field::NumberField;
use super::poly::factor_poly_mod_p;

/// Largest norm bound a prime ideal table may be built for.
pub const DEFAULT_NORM_BUDGET: u64 = 1 << 31;

/// A prime ideal of `O_K`: the `index`-th prime above `p` in (f, index) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub p: u64,
    /// Residue degree.
    pub f: u32,
    pub index: u32,
    /// Ramification index.
    pub e: u32,
    pub ramified: bool,
}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }
}

/// Primes of `K` above `p`, ordered by (f, index).
pub fn primes_above(field: &NumberField, p: u64) -> Vec<PrimeIdeal> {
    if field.is_rational() {
        return vec![PrimeIdeal {
            p,
            f: 1,
            index: 0,
            e: 1,
            ramified: false,
        }];
    }
    factor_poly_mod_p(field.poly(), p)
        .into_iter()
        .enumerate()
        .map(|(i, (deg, mult))| PrimeIdeal {
            p,
            f: deg as u32,
            index: i as u32,
            e: mult,
            ramified: mult > 1,
        })
        .collect()
}

/// All prime ideals of norm `≤ bound`, sorted by norm (then `p`, `f`, index).
#[derive(Debug, Clone)]
pub struct PrimeIdealTable {
    bound: u64,
    ideals: Vec<PrimeIdeal>,
    norms: Vec<u64>,
}

impl PrimeIdealTable {
    pub fn new(field: &NumberField, bound: u64) -> Result<Self> {
        Self::with_budget(field, bound, DEFAULT_NORM_BUDGET)
    }

    pub fn with_budget(field: &NumberField, bound: u64, budget: u64) -> Result<Self> {
        if bound > budget {
            return Err(Error::Resource {
                what: "prime ideal table norm bound",
                requested: bound,
                budget,
            });
        }
        let mut ideals = Vec::new();
        if bound >= 2 {
            let sieve = SegmentedSieve::new(2, bound + 1, crate::arith::DEFAULT_SEGMENT_SIZE)?;
            for table in sieve.iter() {
                for (n, spf, _) in table.entries() {
                    if spf != n {
                        continue;
                    }
                    for ideal in primes_above(field, n) {
                        if n.checked_pow(ideal.f).is_some_and(|q| q <= bound) {
                            ideals.push(ideal);
                        }
                    }
                }
            }
        }
        ideals.sort_by_key(|q| (q.norm(), q.p, q.f, q.index));
        let norms = ideals.iter().map(PrimeIdeal::norm).collect();
        Ok(Self {
            bound,
            ideals,
            norms,
        })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn ideals(&self) -> &[PrimeIdeal] {
        &self.ideals
    }

    pub fn norms(&self) -> &[u64] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Number of prime ideals of norm `≤ y`.
    pub fn count_up_to(&self, y: u64) -> usize {
        self.norms.partition_point(|&n| n <= y)
    }

    /// Walker over all ideals of norm `≤ limit` (including `O_K`).
    pub fn walker(&self, limit: u64) -> IdealWalker<'_> {
        IdealWalker::new(self, limit, 0, self.len(), true)
    }

    /// Walker over ideals of norm `≤ limit` whose largest prime (by table
    /// position) lies in `roots`. `O_K` is never produced.
    pub fn walker_rooted(&self, limit: u64, roots: std::ops::Range<usize>) -> IdealWalker<'_> {
        IdealWalker::new(self, limit, roots.start, roots.end.min(self.len()), false)
    }

    fn check_limit(&self, limit: u64) -> Result<()> {
        if limit > self.bound {
            return Err(Error::Domain(format!(
                "limit {limit} exceeds the prime ideal table bound {}",
                self.bound
            )));
        }
        Ok(())
    }
}

/// One prime power in a factorization, referring to a table position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub prime: usize,
    pub exp: u32,
    /// Norm of the ideal formed by this factor and all before it on the stack.
    pub cumulative_norm: u64,
}

/// Depth-first enumeration of ideals `Π 𝔭ᵢ^{eᵢ}` with norm `≤ limit`.
///
/// Prime factors are chosen in decreasing table position, so the stack holds
/// a factorization sorted by decreasing norm: its first entry is a prime of
/// maximal norm, its last one a prime of minimal norm. Each ideal is visited
/// exactly once and nothing is allocated per ideal.
#[derive(Debug, Clone)]
pub struct IdealWalker<'t> {
    table: &'t PrimeIdealTable,
    limit: u64,
    root_lo: usize,
    root_hi: usize,
    stack: Vec<Factor>,
    started: bool,
    done: bool,
    emit_unit: bool,
}

impl<'t> IdealWalker<'t> {
    fn new(table: &'t PrimeIdealTable, limit: u64, root_lo: usize, root_hi: usize, emit_unit: bool) -> Self {
        Self {
            table,
            limit,
            root_lo,
            root_hi,
            stack: Vec::with_capacity(64),
            started: false,
            done: false,
            emit_unit,
        }
    }

    pub fn table(&self) -> &'t PrimeIdealTable {
        self.table
    }

    /// Largest table position `< below` whose norm fits in `room`.
    fn largest_fitting(&self, below: usize, room: u64) -> Option<usize> {
        let fit = self.table.norms[..below].partition_point(|&n| n <= room);
        fit.checked_sub(1)
    }

    fn descend(&mut self) -> bool {
        let (norm, below, floor) = match self.stack.last() {
            Some(top) => (top.cumulative_norm, top.prime, 0),
            None => (1, self.root_hi, self.root_lo),
        };
        match self.largest_fitting(below, self.limit / norm) {
            Some(j) if j >= floor => {
                self.stack.push(Factor {
                    prime: j,
                    exp: 1,
                    cumulative_norm: norm * self.table.norms[j],
                });
                true
            }
            _ => false,
        }
    }

    fn advance(&mut self) -> bool {
        if self.descend() {
            return true;
        }
        while let Some(top) = self.stack.pop() {
            let q = self.table.norms[top.prime];
            if top.cumulative_norm <= self.limit / q {
                self.stack.push(Factor {
                    exp: top.exp + 1,
                    cumulative_norm: top.cumulative_norm * q,
                    ..top
                });
                return true;
            }
            let floor = if self.stack.is_empty() { self.root_lo } else { 0 };
            if top.prime > floor {
                let parent = self.stack.last().map_or(1, |f| f.cumulative_norm);
                let j = top.prime - 1;
                self.stack.push(Factor {
                    prime: j,
                    exp: 1,
                    cumulative_norm: parent * self.table.norms[j],
                });
                return true;
            }
        }
        false
    }

    /// Next ideal as its factor stack (decreasing norm), or `None` when done.
    /// The unit ideal, if requested, comes first as an empty slice.
    pub fn next_ideal(&mut self) -> Option<&[Factor]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.emit_unit {
                return Some(&self.stack);
            }
        }
        if self.advance() {
            Some(&self.stack)
        } else {
            self.done = true;
            None
        }
    }
}

impl Iterator for IdealWalker<'_> {
    type Item = IdealFactorization;

    fn next(&mut self) -> Option<IdealFactorization> {
        let table = self.table;
        self.next_ideal()
            .map(|stack| IdealFactorization::from_stack(table, stack))
    }
}

/// An integral ideal as its sorted prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealFactorization {
    /// Sorted by increasing norm, then (p, f, index).
    factors: Vec<(PrimeIdeal, u32)>,
}

impl IdealFactorization {
    pub fn unit() -> Self {
        Self { factors: Vec::new() }
    }

    /// Builds a factorization, merging repeated primes.
    pub fn new(factors: impl IntoIterator<Item = (PrimeIdeal, u32)>) -> Self {
        let mut v: Vec<(PrimeIdeal, u32)> = factors.into_iter().filter(|f| f.1 > 0).collect();
        v.sort_by_key(|(q, _)| (q.norm(), q.p, q.f, q.index));
        let mut merged: Vec<(PrimeIdeal, u32)> = Vec::with_capacity(v.len());
        for (q, e) in v {
            match merged.last_mut() {
                Some((last, le)) if *last == q => *le += e,
                _ => merged.push((q, e)),
            }
        }
        Self { factors: merged }
    }

    fn from_stack(table: &PrimeIdealTable, stack: &[Factor]) -> Self {
        Self {
            factors: stack
                .iter()
                .rev()
                .map(|f| (table.ideals[f.prime], f.exp))
                .collect(),
        }
    }

    pub fn factors(&self) -> &[(PrimeIdeal, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn norm(&self) -> u64 {
        self.factors.iter().map(|(q, e)| q.norm().pow(*e)).product()
    }

    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|(_, e)| *e >= 2) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// True when exactly one prime divisor attains the minimal norm.
    pub fn is_distinguishable(&self) -> bool {
        match self.factors.as_slice() {
            [] => false,
            [_] => true,
            [a, b, ..] => a.0.norm() != b.0.norm(),
        }
    }

    /// The minimal prime when the ideal is distinguishable.
    pub fn p_min(&self) -> Option<PrimeIdeal> {
        self.is_distinguishable().then(|| self.factors[0].0)
    }

    /// `M(a)`, the largest norm of a prime divisor; 0 for `O_K`.
    pub fn max_prime_norm(&self) -> u64 {
        self.factors.last().map_or(0, |(q, _)| q.norm())
    }

    /// Every ideal containing this one (all divisors), unit first.
    pub fn divisors(&self) -> Vec<IdealFactorization> {
        let mut out = vec![Vec::new()];
        for &(q, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for d in &out {
                for k in 0..=e {
                    let mut v: Vec<(PrimeIdeal, u32)> = d.clone();
                    if k > 0 {
                        v.push((q, k));
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(|factors| Self { factors }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealStats {
    pub mu: i8,
    pub distinguishable: bool,
    pub p_min: Option<PrimeIdeal>,
    /// `M(a)`; 0 for the unit ideal.
    pub max_norm: u64,
    /// `Q_S(a)`; 0 for the unit ideal.
    pub q: u32,
}

/// Statistics of `a` given a membership predicate for `S`.
pub fn ideal_stats_with(a: &IdealFactorization, mut in_set: impl FnMut(&PrimeIdeal) -> bool) -> IdealStats {
    let max_norm = a.max_prime_norm();
    let q = a
        .factors
        .iter()
        .rev()
        .take_while(|(p, _)| p.norm() == max_norm)
        .filter(|(p, _)| in_set(p))
        .count() as u32;
    IdealStats {
        mu: a.mobius(),
        distinguishable: a.is_distinguishable(),
        p_min: a.p_min(),
        max_norm,
        q,
    }
}

/// `(μ, distinguishable, p_min, M, Q_S)` for `a`; excluded primes count as
/// outside `S`.
pub fn ideal_stats(a: &IdealFactorization, set: &PrimeSetSpec) -> Result<IdealStats> {
    let mut err = None;
    let stats = ideal_stats_with(a, |p| match set.membership_ideal(p) {
        Ok(m) => m == Membership::In,
        Err(e) => {
            err.get_or_insert(e);
            false
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(stats),
    }
}

/// All integral ideals of norm `≤ limit`, unit ideal first.
pub fn enumerate_ideals(field: &NumberField, limit: u64) -> Result<Vec<IdealFactorization>> {
    if limit < 1 {
        return Err(Error::Domain("ideal enumeration needs X ≥ 1".into()));
    }
    let table = PrimeIdealTable::new(field, limit)?;
    Ok(table.walker(limit).collect())
}

/// `Ψ(X, Y)`: ideals of norm `≤ x` all of whose prime divisors have norm `≤ y`.
pub fn smooth_count(field: &NumberField, x: u64, y: u64) -> Result<u64> {
    if x < 1 || y < 1 {
        return Err(Error::Domain("Ψ(X, Y) needs X ≥ 1 and Y ≥ 1".into()));
    }
    let table = PrimeIdealTable::new(field, x.min(y).max(1))?;
    Ok(smooth_count_in(&table, x, y))
}

/// `Ψ(x, y)` using a prebuilt table; primes beyond the table bound are
/// ignored, so the table must cover `min(x, y)`.
pub fn smooth_count_in(table: &PrimeIdealTable, x: u64, y: u64) -> u64 {
    let roots = table.count_up_to(y.min(x));
    let mut w = IdealWalker::new(table, x, 0, roots, true);
    let mut count = 0u64;
    while w.next_ideal().is_some() {
        count += 1;
    }
    count
}

impl PrimeIdealTable {
    /// `[X]_K`: number of ideals of norm `≤ x`.
    pub fn ideal_count(&self, x: u64) -> Result<u64> {
        self.check_limit(x)?;
        Ok(smooth_count_in(self, x, x))
    }
}
