//! Criterion benchmarks for `klbasel-core`; run with `cargo bench -p klbasel-bench`.
