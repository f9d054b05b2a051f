//! Criterion benchmarks for the kfamily kernels; see `benches/`.
