//! Criterion benchmarks for `entvar-core`; see `benches/`.
