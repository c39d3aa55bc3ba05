//! Criterion benchmarks for rlr-core live in `benches/`.
