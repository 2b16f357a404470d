//! Property tests over seeded random instances.

use std::cmp::Ordering;

use proptest::prelude::*;

use blockerlab::clutter::{Clutter, ClutterKind};
use blockerlab::gen;
use blockerlab::poset::DEFAULT_ENUM_LIMIT;
use blockerlab::{Antichain, Label};

/// Independent blocker oracle working purely through the public surface:
/// enumerate all subsets, keep the hitting sets, filter inclusion-minimal.
fn brute_force_blocker(c: &Clutter) -> Clutter {
    match c.kind() {
        ClutterKind::Empty => Clutter::zero_hat(c.ground().clone()).unwrap(),
        ClutterKind::ZeroHat => Clutter::empty(c.ground().clone()).unwrap(),
        ClutterKind::Proper => {
            let ground = c.ground();
            let n = ground.len();
            let members: Vec<u64> = c
                .sets()
                .iter()
                .map(|set| {
                    set.iter()
                        .map(|l| 1u64 << ground.index_of(l).unwrap())
                        .sum()
                })
                .collect();
            let hitting: Vec<u64> = (0..(1u64 << n))
                .filter(|&h| members.iter().all(|&g| g & h != 0))
                .collect();
            let minimal: Vec<Vec<Label>> = hitting
                .iter()
                .copied()
                .filter(|&h| !hitting.iter().any(|&o| o != h && o & h == o))
                .map(|h| {
                    ground
                        .labels()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| h & (1 << i) != 0)
                        .map(|(_, l)| l.clone())
                        .collect()
                })
                .collect();
            Clutter::new(ground.clone(), &minimal).unwrap()
        }
    }
}

fn random_x(c: &Clutter, seed: u64) -> Vec<Label> {
    let mut rng = gen::rng_from_seed(seed);
    let n = c.ground().len();
    let mask: u64 = rand::Rng::random_range(&mut rng, 0..(1u64 << n));
    c.ground()
        .labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, l)| l.clone())
        .collect()
}

proptest! {
    #[test]
    fn label_order_is_total_and_antisymmetric(a in ".{0,8}", b in ".{0,8}") {
        let (la, lb) = (Label::new(a), Label::new(b));
        prop_assert_eq!(la.cmp(&lb), lb.cmp(&la).reverse());
        prop_assert_eq!(la.cmp(&lb) == Ordering::Equal, la == lb);
    }

    #[test]
    fn label_order_is_transitive(a in ".{0,6}", b in ".{0,6}", c in ".{0,6}") {
        let mut labels = [Label::new(a), Label::new(b), Label::new(c)];
        labels.sort();
        prop_assert!(labels[0] <= labels[1] && labels[1] <= labels[2]);
        prop_assert!(labels[0] <= labels[2]);
    }

    #[test]
    fn blocker_involution_and_oracle_agree_on_random_clutters(
        seed in any::<u64>(),
        n in 1usize..=10,
    ) {
        let c = gen::random_clutter(n, &mut gen::rng_from_seed(seed));
        let b = c.blocker();
        // The blocker family passes the validating constructor, so it is
        // Sperner with nonempty members.
        prop_assert!(Clutter::new(b.ground().clone(), &b.sets()).is_ok());
        prop_assert_eq!(&b, &brute_force_blocker(&c));
        prop_assert!(c.verify_involution().passed());
    }

    #[test]
    fn seymour_holds_on_random_instances(seed in any::<u64>(), n in 1usize..=8) {
        let c = gen::random_clutter(n, &mut gen::rng_from_seed(seed));
        let x = random_x(&c, seed.wrapping_add(1));
        prop_assert!(c.verify_seymour(&x).unwrap().passed());
    }

    #[test]
    fn delete_and_contract_shrink_and_stay_sperner(
        seed in any::<u64>(),
        n in 1usize..=9,
    ) {
        let c = gen::random_clutter(n, &mut gen::rng_from_seed(seed));
        let x = random_x(&c, seed.wrapping_add(2));
        for result in [c.delete(&x).unwrap(), c.contract(&x).unwrap()] {
            prop_assert!(result.member_count() <= c.member_count());
            if result.kind() == ClutterKind::Proper {
                prop_assert!(Clutter::new(result.ground().clone(), &result.sets()).is_ok());
            }
        }
    }

    #[test]
    fn clutter_json_round_trips(seed in any::<u64>(), n in 1usize..=8) {
        let c = gen::random_clutter(n, &mut gen::rng_from_seed(seed));
        let text = serde_json::to_string(&c).unwrap();
        let back: Clutter = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn filters_decompose_over_members_on_random_posets(
        seed in any::<u64>(),
        size in 2usize..=9,
    ) {
        let poset = std::sync::Arc::new(gen::random_poset(size, &mut gen::rng_from_seed(seed)));
        for a in Antichain::enumerate(&poset, DEFAULT_ENUM_LIMIT).unwrap() {
            let members: Vec<Label> = a.members().into_iter().cloned().collect();
            let mut union: Vec<Label> = Vec::new();
            for m in &members {
                for above in poset.filter(std::slice::from_ref(m)).unwrap() {
                    if !union.contains(&above) {
                        union.push(above);
                    }
                }
            }
            union.sort();
            prop_assert_eq!(poset.filter(&members).unwrap(), union);
            let filter = poset.filter(&members).unwrap();
            prop_assert_eq!(poset.min_elements(&filter).unwrap(), members);
        }
    }

    #[test]
    fn meet_and_join_are_the_bounds_found_by_search(
        seed in any::<u64>(),
        size in 2usize..=5,
    ) {
        let poset = std::sync::Arc::new(gen::random_poset(size, &mut gen::rng_from_seed(seed)));
        let carrier = Antichain::enumerate(&poset, DEFAULT_ENUM_LIMIT).unwrap();
        for a in &carrier {
            for b in &carrier {
                let meet = a.meet(b).unwrap();
                let join = a.join(b).unwrap();
                for c in &carrier {
                    if c.leq(a).unwrap() && c.leq(b).unwrap() {
                        prop_assert!(c.leq(&meet).unwrap(), "meet is the greatest lower bound");
                    }
                    if a.leq(c).unwrap() && b.leq(c).unwrap() {
                        prop_assert!(join.leq(c).unwrap(), "join is the least upper bound");
                    }
                }
            }
        }
    }
}
