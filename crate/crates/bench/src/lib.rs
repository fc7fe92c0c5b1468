//! Benchmark-only crate; see benches/algebra.rs for the targets.
