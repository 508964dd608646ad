//! Benchmarks for the arcsys engine; see `benches/`.
