//! Criterion benchmarks for the reducers live in `benches/`.
