//! Shared fixtures for the criterion benchmarks in `benches/`.

use eigqubo::instances::{generate, GeneratorFamily, GeneratorSpec};
use eigqubo::QuboInstance;

/// ORLIB-like instance of size `n` at 10% density.
pub fn orlib_like(n: usize, seed: u64) -> QuboInstance {
    generate(&GeneratorSpec::new(GeneratorFamily::OrlibLike, n, 0.1, seed)).expect("valid spec")
}

/// Alternating 0/1 assignment.
pub fn striped(n: usize) -> Vec<u8> {
    (0..n).map(|i| (i % 2) as u8).collect()
}
