//! Benchmarks for `goss-core`; see `benches/`.
