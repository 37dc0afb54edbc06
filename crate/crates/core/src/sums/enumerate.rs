//! Sums over all ideals of bounded norm, by walking factorizations.
//!
//! The prime ideal table is cut into fixed chunks of positions; a walker
//! rooted on a chunk sees exactly the ideals whose largest prime lies in it.
//! Chunks depend only on the table, never on the thread count.

use std::ops::Range;

use rayon::prelude::*;

use super::{normalize_checkpoints, Bucket, SumKind};
use crate::error::Result;
use crate::numfield::{smooth_count_in, Factor, NumberField, PrimeIdealTable};
use crate::primeset::{Membership, PrimeSetSpec};

use super::SumTrace;

const CHUNKS: usize = 256;

fn chunks(len: usize) -> Vec<Range<usize>> {
    let step = len.div_ceil(CHUNKS).max(1);
    (0..len).step_by(step).map(|lo| lo..(lo + step).min(len)).collect()
}

/// Membership of every prime ideal in the table, by table position.
pub(crate) fn table_membership(table: &PrimeIdealTable, set: &PrimeSetSpec) -> Result<Vec<bool>> {
    let mut rational: Vec<u64> = table.ideals().iter().map(|q| q.p).collect();
    rational.sort_unstable();
    rational.dedup();
    let members = set.membership_many(&rational)?;
    Ok(table
        .ideals()
        .iter()
        .map(|q| {
            let i = rational.binary_search(&q.p).expect("prime listed above");
            members[i] == Membership::In
        })
        .collect())
}

/// `μ(a)` if `a ∈ D(K, S)`, for a factor stack in decreasing-norm order.
#[inline]
fn d_term(stack: &[Factor], norms: &[u64], in_set: &[bool]) -> Option<i8> {
    let (last, rest) = stack.split_last()?;
    if stack.iter().any(|f| f.exp > 1) || !in_set[last.prime] {
        return None;
    }
    if let Some(prev) = rest.last() {
        if norms[prev.prime] == norms[last.prime] {
            return None;
        }
    }
    Some(if stack.len().is_multiple_of(2) { 1 } else { -1 })
}

pub(super) fn bucket_sums(field: &NumberField, set: &PrimeSetSpec, cps: &[u64]) -> Result<Vec<Bucket>> {
    let x = *cps.last().expect("checkpoints end at X");
    let table = PrimeIdealTable::new(field, x)?;
    let in_set = table_membership(&table, set)?;
    let norms = table.norms();
    let parts = chunks(table.len())
        .into_par_iter()
        .map(|roots| {
            let mut buckets = vec![Bucket::default(); cps.len()];
            let mut w = table.walker_rooted(x, roots);
            while let Some(stack) = w.next_ideal() {
                if let Some(mu) = d_term(stack, norms, &in_set) {
                    let n = stack[stack.len() - 1].cumulative_norm;
                    buckets[cps.partition_point(|&c| c < n)].add(mu, n);
                }
            }
            buckets
        })
        .collect::<Vec<_>>();
    Ok(super::merge_buckets(cps.len(), parts))
}

/// The partial sum computed by ideal enumeration, also over ℚ. Used to
/// cross-check the sieve path.
pub fn partial_sum_enumerated(field: &NumberField, set: &PrimeSetSpec, x: u64, checkpoints: &[u64]) -> Result<SumTrace> {
    let cps = normalize_checkpoints(x, checkpoints)?;
    let buckets = bucket_sums(field, set, &cps)?;
    Ok(super::trace(SumKind::MuOverNorm, field, set, &cps, &buckets))
}

/// `Σ_{2 ≤ N(a) ≤ X} Q_S(a)`: each ideal counts its primes of maximal norm
/// that lie in `S`.
pub fn q_sum(field: &NumberField, set: &PrimeSetSpec, x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    let table = PrimeIdealTable::new(field, x)?;
    let in_set = table_membership(&table, set)?;
    let norms = table.norms();
    Ok(chunks(table.len())
        .into_par_iter()
        .map(|roots| {
            let mut total = 0u64;
            let mut w = table.walker_rooted(x, roots);
            while let Some(stack) = w.next_ideal() {
                let top = norms[stack[0].prime];
                total += stack
                    .iter()
                    .take_while(|f| norms[f.prime] == top)
                    .filter(|f| in_set[f.prime])
                    .count() as u64;
            }
            total
        })
        .sum())
}

/// The same sum grouped by the prime `𝔭` of maximal norm:
/// `Σ_{𝔭 ∈ S, N𝔭 ≤ X} Ψ(X / N𝔭, N𝔭)`.
pub fn q_sum_by_smooth_counts(field: &NumberField, set: &PrimeSetSpec, x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    let table = PrimeIdealTable::new(field, x)?;
    let in_set = table_membership(&table, set)?;
    Ok((0..table.len())
        .into_par_iter()
        .filter(|&i| in_set[i])
        .map(|i| {
            let q = table.norms()[i];
            smooth_count_in(&table, x / q, q)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_sum_small() {
        let q = NumberField::rational();
        assert_eq!(q_sum(&q, &PrimeSetSpec::all(), 10).unwrap(), 9);
        assert_eq!(q_sum(&q, &PrimeSetSpec::finite([]), 1000).unwrap(), 0);
        assert_eq!(q_sum_by_smooth_counts(&q, &PrimeSetSpec::all(), 10).unwrap(), 9);
    }

    #[test]
    fn q_sum_paths_agree() {
        let ap = PrimeSetSpec::arithmetic_progression(4, 1).unwrap();
        for k in [NumberField::rational(), NumberField::gaussian()] {
            for s in [PrimeSetSpec::all(), ap.clone(), PrimeSetSpec::finite([2, 5])] {
                assert_eq!(q_sum(&k, &s, 3000).unwrap(), q_sum_by_smooth_counts(&k, &s, 3000).unwrap());
            }
        }
    }

    #[test]
    fn chunking_covers_table() {
        for len in [0, 1, 255, 256, 257, 10_000] {
            let c = chunks(len);
            assert_eq!(c.iter().map(|r| r.len()).sum::<usize>(), len);
            assert!(c.windows(2).all(|w| w[0].end == w[1].start));
        }
    }

    #[test]
    fn enumeration_matches_sieve() {
        let q = NumberField::rational();
        let s = PrimeSetSpec::arithmetic_progression(3, 2).unwrap();
        let a = partial_sum_enumerated(&q, &s, 5000, &[10, 100]).unwrap();
        let b = super::super::partial_sum(&q, &s, 5000, &[10, 100]).unwrap();
        for (x, y) in a.checkpoints.iter().zip(&b.checkpoints) {
            assert!((x.value - y.value).abs() < 1e-13);
        }
    }
}
