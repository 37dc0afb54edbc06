mod common;

use std::f64::consts::PI;

use minprime_core::arith::primes_up_to;
use minprime_core::elliptic::{trace_bsgs, trace_naive};
use minprime_core::{batch_traces, trace_of_frobenius, Curve, Error};
use proptest::prelude::*;

fn curves() -> [Curve; 3] {
    [
        Curve::new(-1, 1, false).unwrap(),
        Curve::new(-1, 0, true).unwrap(),
        Curve::new(3, -5, false).unwrap(),
    ]
}

#[test]
fn naive_and_bsgs_agree_from_1e3_to_1e4() {
    for e in curves() {
        for p in primes_up_to(10_000).into_iter().filter(|&p| p >= 1000 && e.is_good_prime(p)) {
            assert_eq!(trace_bsgs(&e, p).unwrap(), trace_naive(&e, p).unwrap(), "{e:?} p = {p}");
        }
    }
}

#[test]
fn traces_match_point_enumeration() {
    for e in curves() {
        for p in primes_up_to(1500).into_iter().filter(|&p| e.is_good_prime(p)) {
            assert_eq!(trace_of_frobenius(&e, p).unwrap(), common::brute_trace(e.a, e.b, p));
        }
    }
}

#[test]
fn sato_tate_fraction_for_the_non_cm_curve() {
    let e = curves()[0];
    let recs = batch_traces(&e, 1_000_000).unwrap();
    let inside = recs.iter().filter(|r| (PI / 3.0..2.0 * PI / 3.0).contains(&r.theta)).count();
    let frac = inside as f64 / recs.len() as f64;
    assert!((frac - 0.609).abs() < 0.01, "{frac}");
}

#[test]
fn bad_primes_are_refused() {
    let e = curves()[0];
    assert!(matches!(trace_of_frobenius(&e, 23), Err(Error::ExcludedPrime { p: 23, .. })));
}

#[test]
fn cm_curve_has_vanishing_traces_at_inert_primes() {
    // y² = x³ − x has CM by ℤ[i]; a_p = 0 exactly when p ≡ 3 (mod 4)
    let e = curves()[1];
    for p in primes_up_to(200_000).into_iter().filter(|&p| p > 2) {
        assert_eq!(trace_of_frobenius(&e, p).unwrap() == 0, p % 4 == 3, "p = {p}");
    }
}

proptest! {
    #[test]
    fn hasse_bound(i in 0usize..40_000, a in -50i64..50, b in -50i64..50) {
        let Ok(e) = Curve::new(a, b, false) else { return Ok(()) };
        let p = primes_up_to(500_000)[i];
        prop_assume!(e.is_good_prime(p));
        let t = trace_of_frobenius(&e, p).unwrap();
        prop_assert!(((t * t) as u64) <= 4 * p);
    }
}
