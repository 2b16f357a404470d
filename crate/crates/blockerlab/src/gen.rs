//! Seeded random generators for posets, clutters, and map tables.
//!
//! Everything here is deterministic given an RNG state, so sweeps and
//! generated fixtures reproduce byte-for-byte from a seed.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clutter::{Clutter, GroundSet};
use crate::label::Label;
use crate::maps::MapTable;
use crate::poset::Poset;

/// The workspace-wide seeded RNG.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random connected poset with a least element, grown as a DAG above a
/// root: each new element covers one or two already-present elements.
///
/// Elements are labeled `0..size` in creation order; `0` is the root.
pub fn random_poset(size: usize, rng: &mut impl Rng) -> Poset {
    assert!((2..=crate::poset::MAX_POSET_ELEMENTS).contains(&size));
    let labels: Vec<Label> = (0..size).map(|i| Label::new(i.to_string())).collect();
    let mut generators: Vec<(Label, Label)> = Vec::new();
    for i in 1..size {
        let lower_count = if i == 1 { 1 } else { rng.random_range(1..=2usize) };
        let mut lowers = Vec::new();
        while lowers.len() < lower_count {
            let j = rng.random_range(0..i);
            if !lowers.contains(&j) {
                lowers.push(j);
            }
        }
        for j in lowers {
            generators.push((labels[j].clone(), labels[i].clone()));
        }
    }
    Poset::new(labels, &generators).expect("grown DAG is a bounded poset")
}

/// A random proper clutter on the ground set `{1, ..., n}`: a handful of
/// random nonempty subsets, reduced to their inclusion-minimal members.
#[allow(clippy::manual_contains)] // the predicate depends on the element
pub fn random_clutter(n: usize, rng: &mut impl Rng) -> Clutter {
    assert!((1..=crate::clutter::MAX_GROUND_ELEMENTS).contains(&n));
    let ground = GroundSet::new((1..=n).map(|i| i.to_string()));
    let draws = rng.random_range(1..=(2 * n).max(3));
    let mut members: Vec<u64> = Vec::new();
    for _ in 0..draws {
        let mask = rng.random_range(1..(1u64 << n));
        if members.iter().any(|&m| m & mask == m) {
            continue;
        }
        members.retain(|&m| mask & m != mask);
        members.push(mask);
    }
    let sets: Vec<Vec<Label>> = members
        .iter()
        .map(|&m| {
            ground
                .labels()
                .iter()
                .enumerate()
                .filter(|(i, _)| m & (1 << i) != 0)
                .map(|(_, l)| l.clone())
                .collect()
        })
        .collect();
    Clutter::new(ground, &sets).expect("minimalized family is Sperner")
}

/// A uniformly random total self-map of the poset.
pub fn random_map(poset: &Arc<Poset>, rng: &mut impl Rng) -> MapTable {
    let n = poset.len();
    let images = (0..n).map(|_| rng.random_range(0..n)).collect();
    MapTable::from_images(poset, images)
}

fn rejection_sample(
    poset: &Arc<Poset>,
    rng: &mut impl Rng,
    tries: u32,
    accept: impl Fn(&MapTable) -> bool,
) -> Option<MapTable> {
    for _ in 0..tries {
        let candidate = random_map(poset, rng);
        if accept(&candidate) {
            return Some(candidate);
        }
    }
    None
}

/// A random order-preserving map, by rejection from uniform tables.
pub fn random_delta(poset: &Arc<Poset>, rng: &mut impl Rng, tries: u32) -> Option<MapTable> {
    rejection_sample(poset, rng, tries, |m| m.check_order_preserving().passed())
}

/// A random order-preserving extensive map, by rejection.
pub fn random_gamma(poset: &Arc<Poset>, rng: &mut impl Rng, tries: u32) -> Option<MapTable> {
    rejection_sample(poset, rng, tries, |m| {
        m.check_extensive().passed() && m.check_order_preserving().passed()
    })
}

/// A random order-reversing map whose square is extensive, by rejection.
/// Some posets admit no such map, in which case this returns `None` once
/// the try budget is exhausted.
pub fn random_beta(poset: &Arc<Poset>, rng: &mut impl Rng, tries: u32) -> Option<MapTable> {
    rejection_sample(poset, rng, tries, |m| {
        m.check_square_extensive().passed() && m.check_order_reversing().passed()
    })
}
