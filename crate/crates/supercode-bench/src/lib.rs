//! Benchmark-only crate; see `benches/construction.rs`.
