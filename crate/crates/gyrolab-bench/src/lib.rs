//! Benchmark-only package; see `benches/gyro.rs`.
