//! The sieve path over ℚ: `μ(n)` and the smallest prime factor of every
//! `n ≤ X` come out of one segmented sieve pass, so nothing is stored per `n`.

use rayon::prelude::*;

use super::Bucket;
use crate::arith::{primes_up_to, SegmentedSieve};
use crate::error::Result;
use crate::primeset::{Membership, PrimeSetSpec};

pub(super) fn bucket_sums(set: &PrimeSetSpec, cps: &[u64], segment_size: usize) -> Result<Vec<Bucket>> {
    let x = *cps.last().expect("checkpoints end at X");
    // Composite n ≤ X have a smallest prime factor ≤ √X; primes above that
    // only occur as n itself and are looked up segment by segment.
    let root = x.isqrt();
    let mut small = vec![false; root as usize + 1];
    let small_primes = primes_up_to(root);
    for (p, m) in small_primes.iter().zip(set.membership_many(&small_primes)?) {
        small[*p as usize] = m == Membership::In;
    }

    let sieve = SegmentedSieve::new(2, x + 1, segment_size)?;
    let chunks = (0..sieve.segment_count())
        .into_par_iter()
        .map(|k| {
            let table = sieve.segment(k);
            let large: Vec<u64> = table
                .entries()
                .filter(|&(n, p, _)| n == p && n > root)
                .map(|(n, _, _)| n)
                .collect();
            let large_in = set.membership_many(&large)?;
            let mut large_iter = large.iter().zip(large_in).peekable();

            let mut buckets = vec![Bucket::default(); cps.len()];
            let mut b = cps.partition_point(|&c| c < table.lo());
            for (n, p, mu) in table.entries() {
                while cps[b] < n {
                    b += 1;
                }
                let in_set = if p <= root {
                    small[p as usize]
                } else {
                    let (&q, m) = large_iter.next().expect("every large spf is a prime n");
                    debug_assert_eq!(q, n);
                    m == Membership::In
                };
                if mu != 0 && in_set {
                    buckets[b].add(mu, n);
                }
            }
            debug_assert!(large_iter.peek().is_none());
            Ok(buckets)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(super::merge_buckets(cps.len(), chunks))
}
