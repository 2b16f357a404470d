//! Embedding of clutters as antichains of the Boolean lattice of subsets,
//! used to cross-check the set-theoretic maps against the order-theoretic
//! ones computed independently on the lattice side.
//!
//! Sperner families over a ground set are exactly the antichains of its
//! subset lattice; the trivial clutters land on the trivial antichains. The
//! set-theoretic deletion and contraction move to the shrunken ground set,
//! so before comparing, their results are re-embedded into the full subset
//! lattice (their members avoid the deleted elements, which makes this
//! canonical).

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::json;
use thiserror::Error;

use crate::antichain::Antichain;
use crate::blockers::AtomSubset;
use crate::clutter::{Clutter, ClutterError, ClutterKind, GroundSet};
use crate::label::Label;
use crate::poset::{Poset, PosetError};
use crate::report::VerificationReport;

/// Default cap on the ground-set size; the lattice has `2^n` elements.
pub const DEFAULT_GROUND_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("ground set has {size} elements; the subset-lattice limit is {limit}")]
    GroundTooLarge { size: usize, limit: usize },
    #[error("the clutter and the lattice have different ground sets")]
    GroundMismatch,
    #[error("ground labels produce ambiguous subset names")]
    AmbiguousGroundLabels,
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Clutter(#[from] ClutterError),
}

/// The lattice of all subsets of a ground set, as a poset under inclusion,
/// with the subset behind each element kept at hand.
#[derive(Debug)]
pub struct BooleanLattice {
    ground: GroundSet,
    poset: Arc<Poset>,
    subset_of_elem: Vec<u64>,
    elem_of_subset: HashMap<u64, usize>,
}

fn subset_label(ground: &GroundSet, mask: u64) -> Label {
    let names: Vec<&str> = ground
        .labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, l)| l.as_str())
        .collect();
    Label::new(format!("{{{}}}", names.join(",")))
}

impl BooleanLattice {
    pub fn new(ground: &GroundSet, limit: usize) -> Result<Self, BridgeError> {
        let n = ground.len();
        if n > limit {
            return Err(BridgeError::GroundTooLarge { size: n, limit });
        }
        let count = 1u64 << n;
        let labels: Vec<Label> = (0..count).map(|m| subset_label(ground, m)).collect();
        {
            let mut unique = labels.clone();
            unique.sort();
            unique.dedup();
            if unique.len() != labels.len() {
                return Err(BridgeError::AmbiguousGroundLabels);
            }
        }
        let mut covers = Vec::new();
        for m in 0..count {
            for i in 0..n {
                if m & (1 << i) == 0 {
                    covers.push((labels[m as usize].clone(), labels[(m | (1 << i)) as usize].clone()));
                }
            }
        }
        let poset = Arc::new(Poset::new(labels.clone(), &covers)?);
        let mut subset_of_elem = vec![0u64; count as usize];
        let mut elem_of_subset = HashMap::new();
        for (m, label) in labels.iter().enumerate() {
            let idx = poset.index_of(label)?;
            subset_of_elem[idx] = m as u64;
            elem_of_subset.insert(m as u64, idx);
        }
        Ok(BooleanLattice {
            ground: ground.clone(),
            poset,
            subset_of_elem,
            elem_of_subset,
        })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn check_ground(&self, other: &GroundSet) -> Result<(), BridgeError> {
        if self.ground == *other {
            Ok(())
        } else {
            Err(BridgeError::GroundMismatch)
        }
    }

    /// The antichain corresponding to a clutter: member sets become lattice
    /// elements; the trivial clutters become the trivial antichains.
    pub fn antichain_of(&self, clutter: &Clutter) -> Result<Antichain, BridgeError> {
        self.check_ground(clutter.ground())?;
        match clutter.kind() {
            ClutterKind::Empty => Ok(Antichain::bottom(&self.poset)),
            ClutterKind::ZeroHat => Ok(Antichain::top(&self.poset)),
            ClutterKind::Proper => {
                let members: Vec<Label> = clutter
                    .member_masks()
                    .iter()
                    .map(|m| self.poset.elements()[self.elem_of_subset[m]].clone())
                    .collect();
                Ok(Antichain::new(&self.poset, &members)?)
            }
        }
    }

    /// The clutter corresponding to an antichain; inverse of
    /// [`BooleanLattice::antichain_of`].
    pub fn clutter_of(&self, antichain: &Antichain) -> Result<Clutter, BridgeError> {
        if antichain.poset() != &self.poset {
            return Err(BridgeError::GroundMismatch);
        }
        if antichain.is_bottom() {
            return Ok(Clutter::empty(self.ground.clone())?);
        }
        if antichain.is_top() {
            return Ok(Clutter::zero_hat(self.ground.clone())?);
        }
        let sets: Vec<Vec<Label>> = antichain
            .members()
            .into_iter()
            .map(|label| {
                let idx = self.poset.index_of(label)?;
                let mask = self.subset_of_elem[idx];
                Ok(self
                    .ground
                    .labels()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, l)| l.clone())
                    .collect())
            })
            .collect::<Result<_, PosetError>>()?;
        Ok(Clutter::new(self.ground.clone(), &sets)?)
    }

    /// The atom subset made of the singletons of `x_set`; atoms of the
    /// subset lattice are exactly the singletons.
    pub fn atom_subset(&self, x_set: &[Label]) -> Result<AtomSubset, BridgeError> {
        let mut atoms = Vec::new();
        for label in x_set {
            let i = self
                .ground
                .index_of(label)
                .ok_or_else(|| ClutterError::ElementOutsideGround(label.clone()))?;
            atoms.push(self.poset.elements()[self.elem_of_subset[&(1u64 << i)]].clone());
        }
        Ok(AtomSubset::new(&self.poset, &atoms)?)
    }

    /// Re-embeds a clutter living on a sub-ground-set into this lattice's
    /// full ground set; its members must avoid the removed elements.
    fn reembed(&self, clutter: &Clutter) -> Result<Clutter, BridgeError> {
        Ok(Clutter::new(self.ground.clone(), &clutter.sets())?)
    }

    /// Verifies the three correspondences for one `(clutter, x)` instance:
    /// the blocker, the deletion, and the contraction each computed on both
    /// sides of the embedding.
    pub fn cross_check(
        &self,
        clutter: &Clutter,
        x_set: &[Label],
    ) -> Result<VerificationReport, BridgeError> {
        self.check_ground(clutter.ground())?;
        let antichain = self.antichain_of(clutter)?;
        let x = self.atom_subset(x_set)?;

        let fail = |step: &str, set_side: &Antichain, order_side: &Antichain| {
            VerificationReport::fail(
                "bridge",
                1,
                json!({
                    "clutter": clutter,
                    "x": x_set,
                    "correspondence": step,
                    "set_side": set_side.to_string(),
                    "order_side": order_side.to_string(),
                }),
            )
        };

        let set_blocker = self.antichain_of(&clutter.blocker())?;
        let order_blocker = antichain.bmap();
        if set_blocker != order_blocker {
            return Ok(fail("blocker", &set_blocker, &order_blocker));
        }

        let set_delete = self.antichain_of(&self.reembed(&clutter.delete(x_set)?)?)?;
        let order_delete = antichain.delete(&x)?;
        if set_delete != order_delete {
            return Ok(fail("deletion", &set_delete, &order_delete));
        }

        let set_contract = self.antichain_of(&self.reembed(&clutter.contract(x_set)?)?)?;
        let order_contract = antichain.contract(&x)?;
        if set_contract != order_contract {
            return Ok(fail("contraction", &set_contract, &order_contract));
        }

        Ok(VerificationReport::pass("bridge", 1))
    }
}

/// One-shot cross-check that builds the subset lattice behind the scenes.
pub fn cross_check(clutter: &Clutter, x_set: &[Label]) -> Result<VerificationReport, BridgeError> {
    let lattice = BooleanLattice::new(clutter.ground(), DEFAULT_GROUND_LIMIT)?;
    lattice.cross_check(clutter, x_set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied())
    }

    fn labels(names: &[&str]) -> Vec<Label> {
        names.iter().map(|&s| Label::new(s)).collect()
    }

    fn clutter(g: &[&str], sets: &[&[&str]]) -> Clutter {
        let family: Vec<Vec<Label>> = sets.iter().map(|s| labels(s)).collect();
        Clutter::new(ground(g), &family).unwrap()
    }

    #[test]
    fn singleton_ground_gives_a_two_chain() {
        let bl = BooleanLattice::new(&ground(&["1"]), DEFAULT_GROUND_LIMIT).unwrap();
        assert_eq!(bl.poset().len(), 2);
        assert_eq!(bl.poset().least(), &Label::new("{}"));
    }

    #[test]
    fn two_element_ground_gives_the_diamond() {
        let bl = BooleanLattice::new(&ground(&["1", "2"]), DEFAULT_GROUND_LIMIT).unwrap();
        assert_eq!(bl.poset().len(), 4);
        assert_eq!(bl.poset().atoms().len(), 2);
        assert_eq!(bl.poset().greatest(), Some(&Label::new("{1,2}")));
    }

    #[test]
    fn atoms_are_the_singletons() {
        let bl = BooleanLattice::new(&ground(&["1", "2", "3"]), DEFAULT_GROUND_LIMIT).unwrap();
        assert_eq!(bl.poset().len(), 8);
        let atoms: Vec<String> = bl.poset().atoms().iter().map(|l| l.to_string()).collect();
        assert_eq!(atoms, vec!["{1}", "{2}", "{3}"]);
    }

    #[test]
    fn ground_limit_is_enforced() {
        let g = GroundSet::new((1..=6).map(|i| i.to_string()));
        let err = BooleanLattice::new(&g, DEFAULT_GROUND_LIMIT).unwrap_err();
        assert_eq!(err, BridgeError::GroundTooLarge { size: 6, limit: 5 });
    }

    #[test]
    fn trivial_clutters_map_to_trivial_antichains() {
        let g = ground(&["1", "2"]);
        let bl = BooleanLattice::new(&g, DEFAULT_GROUND_LIMIT).unwrap();
        let empty = Clutter::empty(g.clone()).unwrap();
        assert!(bl.antichain_of(&empty).unwrap().is_bottom());
        let zero_hat = Clutter::zero_hat(g).unwrap();
        assert!(bl.antichain_of(&zero_hat).unwrap().is_top());
    }

    #[test]
    fn round_trip_is_the_identity_on_all_small_clutters() {
        let g = ground(&["1", "2", "3"]);
        let bl = BooleanLattice::new(&g, DEFAULT_GROUND_LIMIT).unwrap();
        let all = Clutter::enumerate_all(&g).unwrap();
        assert_eq!(all.len(), 20);
        for c in &all {
            let there = bl.antichain_of(c).unwrap();
            let back = bl.clutter_of(&there).unwrap();
            assert_eq!(&back, c);
        }
    }

    #[test]
    fn blocker_correspondence_on_the_running_example() {
        let c = clutter(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        let bl = BooleanLattice::new(c.ground(), DEFAULT_GROUND_LIMIT).unwrap();
        let order_side = bl.antichain_of(&c).unwrap().bmap();
        let set_side = bl.antichain_of(&c.blocker()).unwrap();
        assert_eq!(order_side, set_side);
        assert_eq!(order_side.to_string(), "{{1,3},{2}}");
        assert!(bl.cross_check(&c, &[]).unwrap().passed());
    }

    #[test]
    fn zero_hat_cross_checks_for_any_x() {
        let g = ground(&["1", "2"]);
        let z = Clutter::zero_hat(g.clone()).unwrap();
        let bl = BooleanLattice::new(&g, DEFAULT_GROUND_LIMIT).unwrap();
        assert!(bl.cross_check(&z, &labels(&["1"])).unwrap().passed());
        assert!(bl.cross_check(&z, &[]).unwrap().passed());
    }

    #[test]
    fn cross_check_exhaustive_on_two_elements() {
        let g = ground(&["1", "2"]);
        let bl = BooleanLattice::new(&g, DEFAULT_GROUND_LIMIT).unwrap();
        let subsets: Vec<Vec<Label>> = vec![
            labels(&[]),
            labels(&["1"]),
            labels(&["2"]),
            labels(&["1", "2"]),
        ];
        for c in Clutter::enumerate_all(&g).unwrap() {
            for x in &subsets {
                assert!(bl.cross_check(&c, x).unwrap().passed(), "failed on {c}");
            }
        }
    }

    #[test]
    fn element_blocker_is_the_singletons_of_the_subset() {
        let g = ground(&["1", "2", "3"]);
        let bl = BooleanLattice::new(&g, DEFAULT_GROUND_LIMIT).unwrap();
        let b = crate::blockers::bmap_element(bl.poset(), &Label::new("{1,3}")).unwrap();
        assert_eq!(b.to_string(), "{{1},{3}}");
    }

    #[test]
    fn ground_mismatch_is_detected() {
        let bl = BooleanLattice::new(&ground(&["1", "2"]), DEFAULT_GROUND_LIMIT).unwrap();
        let c = clutter(&["1", "2", "3"], &[&["1"]]);
        assert_eq!(
            bl.cross_check(&c, &[]).unwrap_err(),
            BridgeError::GroundMismatch
        );
    }
}
