//! Clutters (Sperner families) on finite ground sets, with the blocker,
//! deletion, and contraction maps and the verifiers for their identities.
//!
//! A clutter is either one of the two trivial values — the empty family, or
//! the family whose only set is empty — or a proper family of nonempty,
//! pairwise-incomparable subsets of the ground set. The blocker map sends a
//! proper clutter to its family of inclusion-minimal blocking sets and swaps
//! the two trivial values.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::json;
use thiserror::Error;

use crate::label::Label;
use crate::report::VerificationReport;

/// Largest supported ground set; members are stored as 64-bit masks.
pub const MAX_GROUND_ELEMENTS: usize = 64;

/// Largest ground set over which all Sperner families are enumerated.
pub const MAX_ENUMERATION_GROUND: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClutterError {
    #[error("element `{0}` is not in the ground set")]
    ElementOutsideGround(Label),
    #[error("Sperner violation: {inner} is contained in {outer}")]
    SpernerViolation { inner: String, outer: String },
    #[error("ground set has {0} elements; at most {MAX_GROUND_ELEMENTS} are supported")]
    GroundTooLarge(usize),
    #[error("enumerating all clutters over {0} elements is infeasible (limit {1})")]
    EnumerationTooLarge(usize, usize),
    #[error("declared kind `{declared}` does not match the family, which is `{actual}`")]
    KindMismatch { declared: String, actual: String },
    #[error("a proper clutter requires a `sets` field")]
    MissingSets,
    #[error("trivial clutters must not carry a `sets` field")]
    UnexpectedSets,
}

/// An ordered finite set of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GroundSet {
    labels: Vec<Label>,
}

impl GroundSet {
    /// Builds a ground set from any iterable of labels, sorting and
    /// deduplicating them.
    pub fn new<I>(labels: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Label>,
    {
        let mut labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        labels.dedup();
        GroundSet { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.index_of(label).is_some()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    /// Encodes a label subset as a bitmask over this ground set.
    fn mask_of(&self, subset: &[Label]) -> Result<u64, ClutterError> {
        let mut mask = 0u64;
        for label in subset {
            let i = self
                .index_of(label)
                .ok_or_else(|| ClutterError::ElementOutsideGround(label.clone()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    fn labels_of_mask(&self, mask: u64) -> Vec<Label> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// The ground set with the masked elements removed.
    fn without_mask(&self, mask: u64) -> GroundSet {
        GroundSet {
            labels: self
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) == 0)
                .map(|(_, l)| l.clone())
                .collect(),
        }
    }

    fn set_string(&self, mask: u64) -> String {
        let names: Vec<&str> = self
            .labels
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.labels.iter().map(|l| l.as_str()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Classification of a clutter's family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClutterKind {
    /// The empty family.
    Empty,
    /// The family whose unique set is the empty set.
    ZeroHat,
    /// A nonempty family of nonempty, pairwise-incomparable sets.
    Proper,
}

impl ClutterKind {
    fn name(self) -> &'static str {
        match self {
            ClutterKind::Empty => "empty",
            ClutterKind::ZeroHat => "zerohat",
            ClutterKind::Proper => "proper",
        }
    }
}

/// A clutter on a finite ground set, stored in canonical form.
///
/// Members are kept sorted by (cardinality, then lexicographically on their
/// sorted labels), so structural equality is semantic equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clutter {
    ground: GroundSet,
    kind: ClutterKind,
    members: Vec<u64>,
}

/// Canonical member order: cardinality first, then the sorted index
/// sequences lexicographically.
fn canonical_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        if a == b {
            return Ordering::Equal;
        }
        // The lowest differing bit decides: whichever side contains it has
        // the smaller next index.
        let d = (a ^ b).trailing_zeros();
        if a & (1 << d) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

/// Inserts `s` into a family kept inclusion-minimal: drops `s` if some
/// member is contained in it, and evicts members that strictly contain it.
#[allow(clippy::manual_contains)] // the predicate depends on the element
fn insert_minimal(family: &mut Vec<u64>, s: u64) {
    if family.iter().any(|&m| m & s == m) {
        return;
    }
    family.retain(|&m| s & m != s);
    family.push(s);
}

/// Minimal transversals by incremental multiplication: fold the members in
/// one at a time, extending each partial transversal that misses the new
/// member by each of its elements, pruning non-minimal sets as we go.
fn minimal_transversals(members: &[u64]) -> Vec<u64> {
    let mut partial: Vec<u64> = vec![0];
    for &g in members {
        let mut next: Vec<u64> = Vec::with_capacity(partial.len());
        for &t in &partial {
            if t & g != 0 {
                insert_minimal(&mut next, t);
            } else {
                let mut rest = g;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    insert_minimal(&mut next, t | bit);
                    rest ^= bit;
                }
            }
        }
        partial = next;
    }
    partial.sort_by(|a, b| canonical_cmp(*a, *b));
    partial
}

fn is_sperner(members: &[u64]) -> bool {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if a & b == a || a & b == b {
                return false;
            }
        }
    }
    true
}

impl Clutter {
    /// Builds a clutter in canonical form from a family of label subsets.
    ///
    /// The empty family yields the empty clutter and the family `{{}}`
    /// yields the zero-hat clutter. A family containing the empty set
    /// alongside other sets, or any nested pair of sets, is rejected as a
    /// Sperner violation rather than repaired.
    pub fn new(ground: GroundSet, sets: &[Vec<Label>]) -> Result<Self, ClutterError> {
        if ground.len() > MAX_GROUND_ELEMENTS {
            return Err(ClutterError::GroundTooLarge(ground.len()));
        }
        let mut members: Vec<u64> = sets
            .iter()
            .map(|s| ground.mask_of(s))
            .collect::<Result<_, _>>()?;
        members.sort_by(|a, b| canonical_cmp(*a, *b));
        members.dedup();
        if members.is_empty() {
            return Ok(Clutter::empty_unchecked(ground));
        }
        if members == [0] {
            return Ok(Clutter::zero_hat_unchecked(ground));
        }
        // After the canonical sort any contained set precedes its container.
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if a & b == a {
                    return Err(ClutterError::SpernerViolation {
                        inner: ground.set_string(a),
                        outer: ground.set_string(b),
                    });
                }
            }
        }
        Ok(Clutter {
            ground,
            kind: ClutterKind::Proper,
            members,
        })
    }

    /// The empty clutter on `ground`.
    pub fn empty(ground: GroundSet) -> Result<Self, ClutterError> {
        if ground.len() > MAX_GROUND_ELEMENTS {
            return Err(ClutterError::GroundTooLarge(ground.len()));
        }
        Ok(Clutter::empty_unchecked(ground))
    }

    /// The clutter `{{}}` on `ground`.
    pub fn zero_hat(ground: GroundSet) -> Result<Self, ClutterError> {
        if ground.len() > MAX_GROUND_ELEMENTS {
            return Err(ClutterError::GroundTooLarge(ground.len()));
        }
        Ok(Clutter::zero_hat_unchecked(ground))
    }

    fn empty_unchecked(ground: GroundSet) -> Self {
        Clutter {
            ground,
            kind: ClutterKind::Empty,
            members: Vec::new(),
        }
    }

    fn zero_hat_unchecked(ground: GroundSet) -> Self {
        Clutter {
            ground,
            kind: ClutterKind::ZeroHat,
            members: Vec::new(),
        }
    }

    pub(crate) fn from_masks_unchecked(ground: GroundSet, mut members: Vec<u64>) -> Self {
        debug_assert!(is_sperner(&members));
        debug_assert!(!members.is_empty() && !members.contains(&0));
        members.sort_by(|a, b| canonical_cmp(*a, *b));
        Clutter {
            ground,
            kind: ClutterKind::Proper,
            members,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn kind(&self) -> ClutterKind {
        self.kind
    }

    pub fn is_trivial(&self) -> bool {
        self.kind != ClutterKind::Proper
    }

    /// The family as label subsets: `[]` for the empty clutter, `[[]]` for
    /// zero-hat, and the canonical member list otherwise.
    pub fn sets(&self) -> Vec<Vec<Label>> {
        match self.kind {
            ClutterKind::Empty => Vec::new(),
            ClutterKind::ZeroHat => vec![Vec::new()],
            ClutterKind::Proper => self
                .members
                .iter()
                .map(|&m| self.ground.labels_of_mask(m))
                .collect(),
        }
    }

    pub fn member_count(&self) -> usize {
        match self.kind {
            ClutterKind::Empty => 0,
            ClutterKind::ZeroHat => 1,
            ClutterKind::Proper => self.members.len(),
        }
    }

    /// The blocker: all inclusion-minimal sets meeting every member.
    /// Swaps the two trivial clutters; the ground set is unchanged.
    pub fn blocker(&self) -> Clutter {
        match self.kind {
            ClutterKind::Empty => Clutter::zero_hat_unchecked(self.ground.clone()),
            ClutterKind::ZeroHat => Clutter::empty_unchecked(self.ground.clone()),
            ClutterKind::Proper => {
                let members = minimal_transversals(&self.members);
                debug_assert!(is_sperner(&members));
                Clutter {
                    ground: self.ground.clone(),
                    kind: ClutterKind::Proper,
                    members,
                }
            }
        }
    }

    /// Deletion: keeps the members disjoint from `x_set`; the result lives
    /// on the shrunken ground set. Trivial clutters map to themselves.
    pub fn delete(&self, x_set: &[Label]) -> Result<Clutter, ClutterError> {
        let x = self.ground.mask_of(x_set)?;
        let ground = self.ground.without_mask(x);
        match self.kind {
            ClutterKind::Empty => Ok(Clutter::empty_unchecked(ground)),
            ClutterKind::ZeroHat => Ok(Clutter::zero_hat_unchecked(ground)),
            ClutterKind::Proper => {
                let members: Vec<u64> = self
                    .members
                    .iter()
                    .filter(|&&g| g & x == 0)
                    .map(|&g| compress_mask(g, x))
                    .collect();
                if members.is_empty() {
                    Ok(Clutter::empty_unchecked(ground))
                } else {
                    debug_assert!(is_sperner(&members));
                    Ok(Clutter::from_masks_unchecked(ground, members))
                }
            }
        }
    }

    /// Contraction: removes `x_set` from every member and keeps the
    /// inclusion-minimal results. If some member is contained in `x_set`,
    /// the empty set is the unique minimal result and the contraction is
    /// the zero-hat clutter. Trivial clutters map to themselves.
    pub fn contract(&self, x_set: &[Label]) -> Result<Clutter, ClutterError> {
        let x = self.ground.mask_of(x_set)?;
        let ground = self.ground.without_mask(x);
        match self.kind {
            ClutterKind::Empty => Ok(Clutter::empty_unchecked(ground)),
            ClutterKind::ZeroHat => Ok(Clutter::zero_hat_unchecked(ground)),
            ClutterKind::Proper => {
                if self.members.iter().any(|&g| g & !x == 0) {
                    return Ok(Clutter::zero_hat_unchecked(ground));
                }
                let mut members: Vec<u64> = Vec::new();
                for &g in &self.members {
                    insert_minimal(&mut members, g & !x);
                }
                let members = members.into_iter().map(|g| compress_mask(g, x)).collect();
                Ok(Clutter::from_masks_unchecked(ground, members))
            }
        }
    }

    /// Checks that the blocker applied twice returns the original clutter.
    pub fn verify_involution(&self) -> VerificationReport {
        let once = self.blocker();
        let twice = once.blocker();
        if twice == *self {
            VerificationReport::pass("blocker-involution", 1)
        } else {
            VerificationReport::fail(
                "blocker-involution",
                1,
                json!({
                    "input": self,
                    "blocker": once,
                    "double_blocker": twice,
                }),
            )
        }
    }

    /// Checks both deletion/contraction duality identities for the blocker:
    /// the blocker of the contraction is the deletion of the blocker, and
    /// the blocker of the deletion is the contraction of the blocker.
    pub fn verify_seymour(&self, x_set: &[Label]) -> Result<VerificationReport, ClutterError> {
        let blocker = self.blocker();
        let lhs_delete = blocker.delete(x_set)?;
        let rhs_delete = self.contract(x_set)?.blocker();
        if lhs_delete != rhs_delete {
            return Ok(VerificationReport::fail(
                "seymour",
                1,
                json!({
                    "input": self,
                    "x": x_set,
                    "identity": "blocker-then-delete vs contract-then-blocker",
                    "lhs": lhs_delete,
                    "rhs": rhs_delete,
                }),
            ));
        }
        let lhs_contract = blocker.contract(x_set)?;
        let rhs_contract = self.delete(x_set)?.blocker();
        if lhs_contract != rhs_contract {
            return Ok(VerificationReport::fail(
                "seymour",
                1,
                json!({
                    "input": self,
                    "x": x_set,
                    "identity": "blocker-then-contract vs delete-then-blocker",
                    "lhs": lhs_contract,
                    "rhs": rhs_contract,
                }),
            ));
        }
        Ok(VerificationReport::pass("seymour", 1))
    }

    /// Every clutter on `ground`, both trivial values included, in a
    /// deterministic order. Feasible only for tiny ground sets.
    pub fn enumerate_all(ground: &GroundSet) -> Result<Vec<Clutter>, ClutterError> {
        let n = ground.len();
        if n > MAX_ENUMERATION_GROUND {
            return Err(ClutterError::EnumerationTooLarge(n, MAX_ENUMERATION_GROUND));
        }
        let mut out = vec![
            Clutter::empty_unchecked(ground.clone()),
            Clutter::zero_hat_unchecked(ground.clone()),
        ];
        let masks: Vec<u64> = (1..(1u64 << n)).collect();
        let mut chosen: Vec<u64> = Vec::new();
        enumerate_sperner(ground, &masks, 0, &mut chosen, &mut out);
        Ok(out)
    }

    pub(crate) fn member_masks(&self) -> &[u64] {
        &self.members
    }
}

/// Depth-first enumeration of nonempty Sperner families over `masks`.
fn enumerate_sperner(
    ground: &GroundSet,
    masks: &[u64],
    start: usize,
    chosen: &mut Vec<u64>,
    out: &mut Vec<Clutter>,
) {
    for (offset, &m) in masks[start..].iter().enumerate() {
        let compatible = chosen.iter().all(|&c| c & m != c && c & m != m);
        if !compatible {
            continue;
        }
        chosen.push(m);
        out.push(Clutter::from_masks_unchecked(ground.clone(), chosen.clone()));
        enumerate_sperner(ground, masks, start + offset + 1, chosen, out);
        chosen.pop();
    }
}

/// Drops the bits of `removed` from the index space: bit i of `mask` moves
/// down by the number of removed indices below i.
fn compress_mask(mask: u64, removed: u64) -> u64 {
    debug_assert!(mask & removed == 0);
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros();
        let below = (removed & ((1u64 << i) - 1)).count_ones();
        out |= 1 << (i - below);
        rest &= rest - 1;
    }
    out
}

impl fmt::Display for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClutterKind::Empty => write!(f, "{{}} on {}", self.ground),
            ClutterKind::ZeroHat => write!(f, "{{{{}}}} on {}", self.ground),
            ClutterKind::Proper => {
                let sets: Vec<String> = self
                    .members
                    .iter()
                    .map(|&m| self.ground.set_string(m))
                    .collect();
                write!(f, "{{{}}} on {}", sets.join(","), self.ground)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ClutterRepr {
    ground: Vec<Label>,
    kind: ClutterKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sets: Option<Vec<Vec<Label>>>,
}

impl Serialize for Clutter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = ClutterRepr {
            ground: self.ground.labels.clone(),
            kind: self.kind,
            sets: match self.kind {
                ClutterKind::Proper => Some(self.sets()),
                _ => None,
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Clutter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ClutterRepr::deserialize(deserializer)?;
        let ground = GroundSet::new(repr.ground);
        let built = match repr.kind {
            ClutterKind::Proper => {
                let sets = repr.sets.ok_or(ClutterError::MissingSets);
                sets.and_then(|sets| Clutter::new(ground, &sets))
            }
            trivial => {
                if repr.sets.is_some() {
                    Err(ClutterError::UnexpectedSets)
                } else if trivial == ClutterKind::Empty {
                    Clutter::empty(ground)
                } else {
                    Clutter::zero_hat(ground)
                }
            }
        }
        .map_err(D::Error::custom)?;
        if built.kind != repr.kind {
            return Err(D::Error::custom(ClutterError::KindMismatch {
                declared: repr.kind.name().to_string(),
                actual: built.kind.name().to_string(),
            }));
        }
        Ok(built)
    }
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

    /// Independent blocker oracle: enumerate all subsets of the ground set,
    /// keep those meeting every member, filter the inclusion-minimal ones.
    fn brute_force_blocker(c: &Clutter) -> Clutter {
        match c.kind() {
            ClutterKind::Empty => Clutter::zero_hat(c.ground().clone()).unwrap(),
            ClutterKind::ZeroHat => Clutter::empty(c.ground().clone()).unwrap(),
            ClutterKind::Proper => {
                let n = c.ground().len();
                let members = c.member_masks();
                let hitting: Vec<u64> = (0..(1u64 << n))
                    .filter(|&h| members.iter().all(|&g| g & h != 0))
                    .collect();
                let minimal: Vec<u64> = hitting
                    .iter()
                    .copied()
                    .filter(|&h| !hitting.iter().any(|&o| o != h && o & h == o))
                    .collect();
                let sets: Vec<Vec<Label>> = minimal
                    .iter()
                    .map(|&m| c.ground().labels_of_mask(m))
                    .collect();
                Clutter::new(c.ground().clone(), &sets).unwrap()
            }
        }
    }

    #[test]
    fn make_clutter_canonicalizes_a_proper_family() {
        let c = clutter(&["1", "2", "3"], &[&["2", "3"], &["1", "2"]]);
        assert_eq!(c.kind(), ClutterKind::Proper);
        assert_eq!(
            c.sets(),
            vec![labels(&["1", "2"]), labels(&["2", "3"])],
        );
    }

    #[test]
    fn make_clutter_classifies_empty() {
        let c = Clutter::new(ground(&["1", "2", "3"]), &[]).unwrap();
        assert_eq!(c.kind(), ClutterKind::Empty);
    }

    #[test]
    fn make_clutter_classifies_zero_hat() {
        let c = Clutter::new(ground(&["1", "2"]), &[vec![]]).unwrap();
        assert_eq!(c.kind(), ClutterKind::ZeroHat);
    }

    #[test]
    fn make_clutter_rejects_sperner_violation() {
        let err = Clutter::new(
            ground(&["1", "2", "3"]),
            &[labels(&["1"]), labels(&["1", "2"])],
        )
        .unwrap_err();
        assert_eq!(
            err,
            ClutterError::SpernerViolation {
                inner: "{1}".into(),
                outer: "{1,2}".into(),
            }
        );
    }

    #[test]
    fn make_clutter_rejects_empty_set_alongside_others() {
        let err = Clutter::new(ground(&["1", "2"]), &[vec![], labels(&["1"])]).unwrap_err();
        assert!(matches!(err, ClutterError::SpernerViolation { .. }));
    }

    #[test]
    fn make_clutter_rejects_foreign_elements() {
        let err = Clutter::new(ground(&["1", "2"]), &[labels(&["3"])]).unwrap_err();
        assert_eq!(err, ClutterError::ElementOutsideGround(Label::new("3")));
    }

    #[test]
    fn blocker_of_two_overlapping_pairs() {
        let c = clutter(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        let b = c.blocker();
        assert_eq!(b, clutter(&["1", "2", "3"], &[&["2"], &["1", "3"]]));
        assert_eq!(b, brute_force_blocker(&c));
    }

    #[test]
    fn blocker_swaps_trivial_clutters() {
        let e = Clutter::empty(ground(&["1", "2", "3"])).unwrap();
        assert_eq!(e.blocker().kind(), ClutterKind::ZeroHat);
        assert_eq!(e.blocker().blocker().kind(), ClutterKind::Empty);
    }

    #[test]
    fn blocker_of_single_singleton() {
        let c = clutter(&["1", "2"], &[&["1"]]);
        assert_eq!(c.blocker(), clutter(&["1", "2"], &[&["1"]]));
    }

    #[test]
    fn delete_keeps_members_missing_x() {
        let c = clutter(&["1", "2", "3"], &[&["1", "2"], &["3"]]);
        let d = c.delete(&labels(&["1"])).unwrap();
        assert_eq!(d, clutter(&["2", "3"], &[&["3"]]));
    }

    #[test]
    fn delete_can_empty_the_family() {
        let c = clutter(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        let d = c.delete(&labels(&["2"])).unwrap();
        assert_eq!(d.kind(), ClutterKind::Empty);
        assert_eq!(d.ground(), &ground(&["1", "3"]));
    }

    #[test]
    fn delete_fixes_trivial_clutters_and_shrinks_ground() {
        let z = Clutter::zero_hat(ground(&["1", "2"])).unwrap();
        let d = z.delete(&labels(&["1"])).unwrap();
        assert_eq!(d.kind(), ClutterKind::ZeroHat);
        assert_eq!(d.ground(), &ground(&["2"]));
    }

    #[test]
    fn contract_minimalizes_the_quotient() {
        let c = clutter(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        let q = c.contract(&labels(&["1"])).unwrap();
        assert_eq!(q, clutter(&["2", "3"], &[&["2"]]));
    }

    #[test]
    fn contract_to_zero_hat_when_a_member_is_swallowed() {
        let c = clutter(&["1", "2"], &[&["1", "2"]]);
        let q = c.contract(&labels(&["1", "2"])).unwrap();
        assert_eq!(q.kind(), ClutterKind::ZeroHat);
        assert!(q.ground().is_empty());
    }

    #[test]
    fn contract_fixes_empty_clutter() {
        let e = Clutter::empty(ground(&["1", "2"])).unwrap();
        let q = e.contract(&labels(&["2"])).unwrap();
        assert_eq!(q.kind(), ClutterKind::Empty);
        assert_eq!(q.ground(), &ground(&["1"]));
    }

    #[test]
    fn delete_rejects_x_outside_ground() {
        let c = clutter(&["1", "2"], &[&["1"]]);
        assert!(matches!(
            c.delete(&labels(&["9"])),
            Err(ClutterError::ElementOutsideGround(_))
        ));
    }

    #[test]
    fn involution_holds_on_examples() {
        let c = clutter(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        assert!(c.verify_involution().passed());
        let e = Clutter::empty(ground(&["1", "2", "3"])).unwrap();
        assert!(e.verify_involution().passed());
    }

    #[test]
    fn involution_holds_for_all_clutters_on_three_elements() {
        let all = Clutter::enumerate_all(&ground(&["1", "2", "3"])).unwrap();
        assert_eq!(all.len(), 20);
        for c in &all {
            assert!(c.verify_involution().passed(), "failed on {c}");
        }
    }

    #[test]
    fn seymour_example_both_sides_give_the_singleton() {
        let c = clutter(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        let x = labels(&["1"]);
        assert!(c.verify_seymour(&x).unwrap().passed());
        let lhs = c.blocker().delete(&x).unwrap();
        assert_eq!(lhs, clutter(&["2", "3"], &[&["2"]]));
    }

    #[test]
    fn seymour_holds_on_trivial_clutters() {
        let z = Clutter::zero_hat(ground(&["1", "2"])).unwrap();
        assert!(z.verify_seymour(&labels(&["1"])).unwrap().passed());
    }

    #[test]
    fn seymour_exhaustive_on_three_elements() {
        let g = ground(&["1", "2", "3"]);
        let all = Clutter::enumerate_all(&g).unwrap();
        assert_eq!(all.len(), 20);
        let subsets: Vec<Vec<Label>> = (0u64..8)
            .map(|m| {
                (0..3)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| g.labels()[i].clone())
                    .collect()
            })
            .collect();
        for c in &all {
            for x in &subsets {
                assert!(c.verify_seymour(x).unwrap().passed(), "failed on {c}");
            }
        }
    }

    #[test]
    fn production_blocker_matches_brute_force_up_to_four_elements() {
        for n in 0..=4usize {
            let g = GroundSet::new((1..=n).map(|i| i.to_string()));
            for c in Clutter::enumerate_all(&g).unwrap() {
                assert_eq!(c.blocker(), brute_force_blocker(&c), "mismatch on {c}");
            }
        }
    }

    #[test]
    fn enumeration_counts_match_dedekind_numbers() {
        for (n, count) in [(0usize, 2usize), (1, 3), (2, 6), (3, 20), (4, 168)] {
            let g = GroundSet::new((1..=n).map(|i| i.to_string()));
            assert_eq!(Clutter::enumerate_all(&g).unwrap().len(), count);
        }
    }

    #[test]
    fn member_counts_never_grow_under_delete_and_contract() {
        let g = ground(&["1", "2", "3"]);
        let x = labels(&["2"]);
        for c in Clutter::enumerate_all(&g).unwrap() {
            assert!(c.delete(&x).unwrap().member_count() <= c.member_count());
            assert!(c.contract(&x).unwrap().member_count() <= c.member_count());
        }
    }

    #[test]
    fn json_round_trip_preserves_canonical_form() {
        let c = clutter(&["1", "2", "3"], &[&["2", "3"], &["1", "2"]]);
        let text = serde_json::to_string(&c).unwrap();
        let back: Clutter = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn json_rejects_kind_mismatch() {
        let text = r#"{"ground": ["1", "2"], "kind": "proper", "sets": []}"#;
        assert!(serde_json::from_str::<Clutter>(text).is_err());
    }

    #[test]
    fn json_rejects_sets_on_trivial_kind() {
        let text = r#"{"ground": ["1"], "kind": "empty", "sets": []}"#;
        assert!(serde_json::from_str::<Clutter>(text).is_err());
    }

    #[test]
    fn display_shows_canonical_families() {
        let c = clutter(&["1", "2", "3"], &[&["2", "3"], &["1", "2"]]);
        assert_eq!(c.to_string(), "{{1,2},{2,3}} on {1,2,3}");
        let z = Clutter::zero_hat(ground(&["1"])).unwrap();
        assert_eq!(z.to_string(), "{{}} on {1}");
    }
}
