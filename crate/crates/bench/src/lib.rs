//! Fixtures shared by the criterion benchmarks.

use qbaf::genbench::{cyclic_density, gen_random_acyclic, gen_random_cyclic};
use qbaf::Qbaf;

/// A seeded cyclic framework with `n` arguments at the benchmark density.
pub fn cyclic_fixture(n: usize, seed: u64) -> Qbaf {
    gen_random_cyclic(n, cyclic_density(n), seed)
}

pub fn acyclic_fixture(seed: u64) -> Qbaf {
    gen_random_acyclic(seed)
}
