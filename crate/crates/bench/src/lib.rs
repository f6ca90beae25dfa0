//! Benchmarks live in benches/; see `cargo bench -p omega-rep-bench`.
