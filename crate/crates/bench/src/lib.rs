//! Criterion benchmarks for the ball engine and searches; see `benches/`.
