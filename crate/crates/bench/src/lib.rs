//! Criterion benchmarks for `exfgm`; see `benches/`.
