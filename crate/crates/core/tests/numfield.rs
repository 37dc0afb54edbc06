mod common;

use minprime_core::arith::primes_up_to;
use minprime_core::numfield::{poly::FpPoly, ClassInvariants};
use minprime_core::{
    enumerate_ideals, factor_poly_mod_p, primes_above, residue_ck, smooth_count, NumberField, PrimeIdealTable,
};
use proptest::prelude::*;

fn test_fields() -> Vec<NumberField> {
    let cubic = NumberField::new(
        "Q(2^(1/3))",
        vec![-2, 0, 0, 1],
        ClassInvariants {
            r1: Some(1),
            r2: Some(1),
            class_number: Some(1),
            roots_of_unity: Some(2),
            regulator: Some(1.347_377_292_159_3),
            abs_discriminant: Some(108),
        },
    )
    .unwrap();
    let quartic = NumberField::new("Q(zeta_5)", vec![1, 1, 1, 1, 1], ClassInvariants::default()).unwrap();
    let sqrt2 = NumberField::from_toml_str(
        "name = \"Q(sqrt 2)\"\npolynomial = [1, 0, -2]\n[invariants]\nr1 = 2\nr2 = 0\nclass_number = 1\n\
         roots_of_unity = 2\nregulator = 0.881373587019543\nabs_discriminant = 8\n",
    )
    .unwrap();
    vec![NumberField::rational(), NumberField::gaussian(), sqrt2, cubic, quartic]
}

#[test]
fn splitting_data_sums_to_degree() {
    for k in test_fields() {
        for p in primes_up_to(10_000) {
            let above = primes_above(&k, p);
            let total: u32 = above.iter().map(|q| q.e * q.f).sum();
            assert_eq!(total as usize, k.degree(), "{} at p = {p}", k.name());
        }
    }
}

#[test]
fn splitting_in_cyclotomic_field_follows_order_of_p() {
    // in ℚ(ζ₅) the residue degree of p ≠ 5 is the order of p mod 5
    let k = &test_fields()[4];
    for p in primes_up_to(2000).into_iter().filter(|&p| p != 5) {
        let f = (1..=4).find(|&f| common::pow_mod(p, f, 5) == 1).unwrap();
        let above = primes_above(k, p);
        assert!(above.iter().all(|q| q.f as u64 == f && q.e == 1), "p = {p}");
        assert_eq!(above.len() as u64, 4 / f);
    }
    let five = primes_above(k, 5);
    assert_eq!((five.len(), five[0].e, five[0].f), (1, 4, 1));
}

#[test]
fn rational_ideals_are_the_integers() {
    let ideals = enumerate_ideals(&NumberField::rational(), 100_000).unwrap();
    let mut norms: Vec<u64> = ideals.iter().map(|a| a.norm()).collect();
    norms.sort_unstable();
    assert_eq!(norms, (1..=100_000).collect::<Vec<_>>());
}

#[test]
fn gaussian_ideal_count_tracks_residue() {
    let k = NumberField::gaussian();
    let t = PrimeIdealTable::new(&k, 1_000_000).unwrap();
    let c = residue_ck(&k).unwrap();
    assert!((t.ideal_count(1_000_000).unwrap() as f64 / 1e6 - c).abs() < 0.02);
}

#[test]
fn real_quadratic_ideal_count_tracks_residue() {
    let k = test_fields()[2].clone();
    let c = residue_ck(&k).unwrap();
    let expected = 4.0 * (1.0 + 2f64.sqrt()).ln() / (2.0 * 8f64.sqrt());
    assert!((c - expected).abs() < 1e-12, "{c}");
    let t = PrimeIdealTable::new(&k, 1_000_000).unwrap();
    assert!((t.ideal_count(1_000_000).unwrap() as f64 / 1e6 - c).abs() < 0.02);
}

#[test]
fn harmonic_sum_minus_log_is_bounded() {
    for k in [NumberField::gaussian(), test_fields()[2].clone()] {
        let c = residue_ck(&k).unwrap();
        let t = PrimeIdealTable::new(&k, 100_000).unwrap();
        let diffs: Vec<f64> = [1_000u64, 10_000, 100_000]
            .iter()
            .map(|&x| {
                let h: f64 = t.walker(x).map(|a| 1.0 / a.norm() as f64).sum();
                h - c * (x as f64).ln()
            })
            .collect();
        let spread = diffs.iter().cloned().fold(f64::MIN, f64::max) - diffs.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1.0, "{}: {diffs:?}", k.name());
    }
}

#[test]
fn ideal_norms_factor_consistently() {
    // N(a) is multiplicative over the factorization, and the walker emits
    // each ideal once
    for k in test_fields() {
        let ideals = enumerate_ideals(&k, 3000).unwrap();
        let mut seen = std::collections::HashSet::new();
        for a in &ideals {
            let n: u64 = a.factors().iter().map(|(q, e)| q.norm().pow(*e)).product();
            assert_eq!(n, a.norm());
            assert!(seen.insert(a.clone()));
        }
    }
}

proptest! {
    #[test]
    fn smooth_count_is_monotone(x in 1u64..4000, dx in 0u64..2000, y in 1u64..4000, dy in 0u64..2000) {
        let k = NumberField::gaussian();
        let base = smooth_count(&k, x, y).unwrap();
        prop_assert!(smooth_count(&k, x + dx, y).unwrap() >= base);
        prop_assert!(smooth_count(&k, x, y + dy).unwrap() >= base);
    }

    #[test]
    fn factorization_reconstructs(coeffs in prop::collection::vec(0u64..1000, 1..9), pi in 0usize..40) {
        let p = primes_up_to(200)[pi];
        let mut c = coeffs;
        c.push(1);
        let f = FpPoly::from_coeffs(c.clone(), p);
        let factors = minprime_core::numfield::poly::factor(&f, p);
        let mut prod = FpPoly::one();
        for (g, m) in &factors {
            for _ in 0..*m {
                prod = prod.mul(g, p);
            }
        }
        prop_assert_eq!(prod, f.monic(p));
        let ints: Vec<i64> = c.iter().map(|&v| v as i64).collect();
        let degree: usize = factor_poly_mod_p(&ints, p).iter().map(|&(d, m)| d * m as usize).sum();
        prop_assert_eq!(degree, c.len() - 1);
    }
}
