//! Benchmarks for the modheight kernels; see `benches/kernels.rs`.
