//! Criterion benchmarks for `coadjoint-core`; see `benches/`.
