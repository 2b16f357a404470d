//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use blockerlab::clutter::GroundSet;
use blockerlab::gen;
use blockerlab::{Clutter, Poset};

/// A seeded random clutter on `{1..n}`.
pub fn clutter_fixture(n: usize, seed: u64) -> Clutter {
    gen::random_clutter(n, &mut gen::rng_from_seed(seed))
}

/// A seeded random bounded poset.
pub fn poset_fixture(size: usize, seed: u64) -> Arc<Poset> {
    Arc::new(gen::random_poset(size, &mut gen::rng_from_seed(seed)))
}

/// The subset lattice of `{1..n}` as a poset.
pub fn subset_lattice_fixture(n: usize) -> Arc<Poset> {
    let ground = GroundSet::new((1..=n).map(|i| i.to_string()));
    Arc::clone(
        blockerlab::BooleanLattice::new(&ground, 5)
            .expect("within the ground limit")
            .poset(),
    )
}
