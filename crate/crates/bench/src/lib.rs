//! Benchmark-only crate; see `benches/enumerate.rs`.
