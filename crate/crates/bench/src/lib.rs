//! Criterion benchmarks for `minprime-core`; see `benches/`.
