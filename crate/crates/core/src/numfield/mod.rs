//! Monogenic number fields: prime splitting from the factorization of the
//! defining polynomial modulo `p`, enumeration of integral ideals by norm,
//! and the per-ideal statistics (`μ`, minimal and maximal primes, `Q_S`).
//!
//! Every field is assumed monogenic (`O_K = ℤ[θ]`), so that by
//! Dedekind-Kummer the primes above `p` correspond to the irreducible factors
//! of `f mod p`, with residue degree equal to the factor degree and
//! ramification index equal to its multiplicity. For non-monogenic fields the
//! splitting at primes dividing the index `[O_K : ℤ[θ]]` would be wrong; the
//! crate does not detect this.

mod field;
mod ideals;
pub mod poly;

pub use field::{residue_ck, ClassInvariants, NumberField};
pub use ideals::{
    enumerate_ideals, ideal_stats, ideal_stats_with, primes_above, smooth_count, smooth_count_in, Factor,
    IdealFactorization, IdealStats, IdealWalker, PrimeIdeal, PrimeIdealTable,
    DEFAULT_NORM_BUDGET,
};
pub use poly::factor_poly_mod_p;
