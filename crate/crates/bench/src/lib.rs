//! Benchmarks for the decision pipeline live under `benches/`.

pub use zfuse_core::datasets;
