//! Criterion benchmarks for `dwtl-core`; see `benches/`.
