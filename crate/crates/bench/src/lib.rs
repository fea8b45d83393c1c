//! Benchmark fixtures for lralg; see `benches/`.
