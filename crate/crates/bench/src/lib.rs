//! Criterion benchmarks for the footprint workbench live in `benches/`.
