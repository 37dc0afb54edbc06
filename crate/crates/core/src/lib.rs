//! Möbius partial sums over integral ideals whose minimal prime divisor lies
//! in a prescribed set of primes.
//!
//! For a number field `K` and a set `S` of prime ideals with natural density
//! `δ(S)`, the sums
//!
//! ```text
//!     S(X) = − Σ  μ(a) / N(a)        over 2 ≤ N(a) ≤ X, p_min(a) ∈ S
//! ```
//!
//! tend to `δ(S)`. This crate computes them, together with the companion
//! quantities used to study them: the maximal-prime counts `Q_S`, the
//! divisor-lattice duality between minimal and maximal primes, smooth ideal
//! counts `Ψ(X, Y)`, and prime counting error diagnostics.
//!
//! Layout:
//!
//! * [`arith`]: sieves, Möbius values, Kronecker symbols, `Li`, compensated sums.
//! * [`numfield`]: monogenic number fields, prime splitting, ideal enumeration.
//! * [`primeset`]: declarative prime sets and their densities.
//! * [`elliptic`]: traces of Frobenius and Sato-Tate angles.
//! * [`sums`]: partial sums, `Q_S` sums, duality checks, density diagnostics.

pub mod arith;
pub mod elliptic;
pub mod error;
pub mod numfield;
pub mod primeset;
pub mod sums;

pub use arith::{kronecker, li, mobius, sieve_spf, CompensatedSum, SpfTable};
pub use elliptic::{
    batch_traces, reduction_trace, theta_angle, trace_of_frobenius, BadPrimes, Curve, TraceRecord,
};
pub use error::{Error, Result};
pub use numfield::{
    enumerate_ideals, factor_poly_mod_p, ideal_stats, primes_above, residue_ck, smooth_count,
    IdealFactorization, IdealStats, NumberField, PrimeIdeal, PrimeIdealTable,
};
pub use primeset::{beatty_contains, sato_tate_measure, BeattyAlpha, Membership, PrimeSetSpec, SetKind};
pub use sums::{
    density_diagnostics, duality_sweep, mu_indicator_sum, partial_sum, partial_sum_with, q_sum,
    q_sum_by_smooth_counts, verify_duality, Checkpoint, DensityDiagnostics, SumKind, SumOptions, SumTrace,
};
