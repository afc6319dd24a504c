//! Criterion benchmarks for the umbra engines live in `benches/`.
