//! Benchmark-only crate; see `benches/core.rs` for the measurements.
//! Run with `cargo bench -p evidence-bench`.
