//! Criterion benchmarks for walk construction, evolution and embedding.
//! Run with `cargo bench -p qwalk-bench`.
