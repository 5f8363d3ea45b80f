//! Criterion benchmarks for `proxtr` live in `benches/`.
