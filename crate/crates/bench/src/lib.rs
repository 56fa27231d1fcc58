//! Criterion benchmarks for martkit live under `benches/`.
