//! Criterion benchmarks for the forest, under `benches/`.
//!
//! Run with `cargo bench -p dft-bench`. The ratio-based scaling check lives
//! in the core acceptance suite; these report absolute timings.
