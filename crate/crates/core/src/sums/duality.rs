//! The finite identity that drives the limit: for every ideal `a`,
//! `Σ_{b | a} μ(b)·1_D(b) = −Q_S(a)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::numfield::{ideal_stats_with, IdealFactorization, NumberField, PrimeIdealTable};
use crate::primeset::{Membership, PrimeSetSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Duality {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// Both sides of the identity for one ideal.
pub fn verify_duality(a: &IdealFactorization, set: &PrimeSetSpec) -> Result<Duality> {
    let mut cache = HashMap::new();
    for (q, _) in a.factors() {
        cache.insert(q.p, set.membership_ideal(q)? == Membership::In);
    }
    Ok(check(a, |p| cache[&p], IdealFactorization::mobius))
}

fn check(a: &IdealFactorization, in_set: impl Fn(u64) -> bool, mu: impl Fn(&IdealFactorization) -> i8) -> Duality {
    let lhs = a
        .divisors()
        .iter()
        .map(|b| {
            let s = ideal_stats_with(b, |q| in_set(q.p));
            match s.p_min {
                Some(p) if s.distinguishable && in_set(p.p) => mu(b) as i64,
                _ => 0,
            }
        })
        .sum();
    let rhs = -(ideal_stats_with(a, |q| in_set(q.p)).q as i64);
    Duality {
        lhs,
        rhs,
        holds: lhs == rhs,
    }
}

/// Outcome of checking the identity for every ideal of norm `≤ X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualitySweep {
    pub checked: u64,
    /// Norms and both sides for each ideal where the identity failed.
    pub failures: Vec<(u64, Duality)>,
}

impl DualitySweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn duality_sweep(field: &NumberField, set: &PrimeSetSpec, x: u64) -> Result<DualitySweep> {
    duality_sweep_with(field, set, x, IdealFactorization::mobius)
}

/// Sweep with a caller-supplied Möbius function, so a deliberately wrong one
/// can show that the check has teeth.
pub fn duality_sweep_with(
    field: &NumberField,
    set: &PrimeSetSpec,
    x: u64,
    mu: impl Fn(&IdealFactorization) -> i8 + Sync,
) -> Result<DualitySweep> {
    let table = PrimeIdealTable::new(field, x.max(1))?;
    let in_set = super::enumerate::table_membership(&table, set)?;
    let by_p: HashMap<u64, bool> = table.ideals().iter().zip(&in_set).map(|(q, &m)| (q.p, m)).collect();
    let ideals: Vec<IdealFactorization> = table.walker(x).collect();
    let mut failures: Vec<(u64, Duality)> = ideals
        .par_iter()
        .filter_map(|a| {
            let d = check(a, |p| by_p[&p], &mu);
            (!d.holds).then(|| (a.norm(), d))
        })
        .collect();
    failures.sort_by_key(|f| f.0);
    Ok(DualitySweep {
        checked: ideals.len() as u64,
        failures,
    })
}
