use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minprime_core::elliptic::trace_bsgs;
use minprime_core::numfield::PrimeIdealTable;
use minprime_core::{
    beatty_contains, factor_poly_mod_p, partial_sum, q_sum, sieve_spf, trace_of_frobenius, BeattyAlpha, Curve,
    NumberField, PrimeSetSpec,
};

fn sieve(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve_spf");
    for lo in [2u64, 1_000_000_000] {
        g.bench_with_input(BenchmarkId::from_parameter(lo), &lo, |b, &lo| {
            b.iter(|| sieve_spf(lo, lo + (1 << 20)).unwrap())
        });
    }
    g.finish();
}

fn beatty(c: &mut Criterion) {
    let pi = BeattyAlpha::pi();
    c.bench_function("beatty_contains/1e4 values", |b| {
        b.iter(|| (1_000_000u64..1_010_000).filter(|&m| beatty_contains(&pi, m).unwrap()).count())
    });
}

fn elliptic(c: &mut Criterion) {
    let e = Curve::new(-1, 1, false).unwrap();
    let mut g = c.benchmark_group("trace");
    g.bench_function("naive p=65521", |b| b.iter(|| trace_of_frobenius(&e, black_box(65_521)).unwrap()));
    g.bench_function("bsgs p=999983", |b| b.iter(|| trace_bsgs(&e, black_box(999_983)).unwrap()));
    g.finish();
}

fn poly(c: &mut Criterion) {
    // x⁶ + x + 1, leading coefficient last
    let f = [1i64, 1, 0, 0, 0, 0, 1];
    c.bench_function("factor_poly_mod_p deg 6", |b| b.iter(|| factor_poly_mod_p(&f, black_box(1_000_003))));
}

fn sums(c: &mut Criterion) {
    let q = NumberField::rational();
    let k = NumberField::gaussian();
    let pi = PrimeSetSpec::beatty(BeattyAlpha::pi());
    let ap = PrimeSetSpec::arithmetic_progression(4, 1).unwrap();
    let mut g = c.benchmark_group("sums");
    g.sample_size(10);
    g.bench_function("partial_sum Q beatty 1e6", |b| b.iter(|| partial_sum(&q, &pi, 1_000_000, &[]).unwrap()));
    g.bench_function("partial_sum Q(i) ap 1e5", |b| b.iter(|| partial_sum(&k, &ap, 100_000, &[]).unwrap()));
    g.bench_function("q_sum Q ap 1e5", |b| b.iter(|| q_sum(&q, &ap, 100_000).unwrap()));
    g.bench_function("ideal table Q(i) 1e6", |b| b.iter(|| PrimeIdealTable::new(&k, 1_000_000).unwrap()));
    g.finish();
}

criterion_group!(benches, sieve, beatty, elliptic, poly, sums);
criterion_main!(benches);
