//! The distributive lattice of antichains of a poset, ordered by filter
//! inclusion.
//!
//! The bottom of the lattice is the empty antichain and the top is the
//! one-element antichain holding the least poset element; these two are the
//! trivial antichains. Meets and joins are realized through the filter
//! lattice: the filter of an antichain determines it (the antichain is the
//! set of minimal elements of its filter), filters are closed under
//! intersection and union, so
//! `meet = min(F(a) ∩ F(b))` and `join = min(F(a) ∪ F(b))`.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::label::Label;
use crate::poset::{ElemMask, Poset, PosetError};

/// A canonical set of pairwise-incomparable poset elements.
///
/// Every antichain keeps a shared handle to its poset, so cross-poset
/// operations are detected and rejected rather than silently misread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antichain {
    poset: Arc<Poset>,
    mask: ElemMask,
}

impl Antichain {
    /// Builds an antichain after checking pairwise incomparability.
    ///
    /// Because the least element is comparable to everything, the only
    /// antichain containing it is the trivial top `{least}`.
    pub fn new(poset: &Arc<Poset>, members: &[Label]) -> Result<Self, PosetError> {
        let mask = poset.antichain_mask(members)?;
        Ok(Antichain {
            poset: Arc::clone(poset),
            mask,
        })
    }

    /// The bottom of the lattice: the empty antichain.
    pub fn bottom(poset: &Arc<Poset>) -> Self {
        Antichain {
            poset: Arc::clone(poset),
            mask: 0,
        }
    }

    /// The top of the lattice: the one-element antichain `{least}`.
    pub fn top(poset: &Arc<Poset>) -> Self {
        Antichain {
            poset: Arc::clone(poset),
            mask: 1 << poset.least_idx(),
        }
    }

    pub(crate) fn from_mask(poset: &Arc<Poset>, mask: ElemMask) -> Self {
        debug_assert!(poset.is_antichain_mask(mask));
        Antichain {
            poset: Arc::clone(poset),
            mask,
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn members(&self) -> Vec<&Label> {
        self.poset.labels_of_mask(self.mask)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_bottom(&self) -> bool {
        self.mask == 0
    }

    pub fn is_top(&self) -> bool {
        self.mask == 1 << self.poset.least_idx()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_bottom() || self.is_top()
    }

    pub(crate) fn mask(&self) -> ElemMask {
        self.mask
    }

    pub(crate) fn filter_mask(&self) -> ElemMask {
        self.poset.filter_mask(self.mask)
    }

    fn check_same_poset(&self, other: &Antichain) -> Result<(), PosetError> {
        if Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset {
            Ok(())
        } else {
            Err(PosetError::MismatchedPoset)
        }
    }

    /// The lattice order: `self <= other` iff the filter of `self` is
    /// contained in the filter of `other`.
    pub fn leq(&self, other: &Antichain) -> Result<bool, PosetError> {
        self.check_same_poset(other)?;
        Ok(self.filter_mask() & !other.filter_mask() == 0)
    }

    /// Greatest lower bound under the filter-inclusion order.
    pub fn meet(&self, other: &Antichain) -> Result<Antichain, PosetError> {
        self.check_same_poset(other)?;
        let inter = self.filter_mask() & other.filter_mask();
        Ok(Antichain::from_mask(&self.poset, self.poset.min_mask(inter)))
    }

    /// Least upper bound under the filter-inclusion order.
    pub fn join(&self, other: &Antichain) -> Result<Antichain, PosetError> {
        self.check_same_poset(other)?;
        let union = self.filter_mask() | other.filter_mask();
        Ok(Antichain::from_mask(&self.poset, self.poset.min_mask(union)))
    }

    /// Every antichain of the poset, both trivial ones included, sorted by
    /// (size, then members lexicographically in element order).
    ///
    /// Refuses posets larger than `limit` elements.
    pub fn enumerate(poset: &Arc<Poset>, limit: usize) -> Result<Vec<Antichain>, PosetError> {
        let n = poset.len();
        if n > limit {
            return Err(PosetError::EnumerationLimit { size: n, limit });
        }
        let mut masks: Vec<ElemMask> = Vec::new();
        collect_antichains(poset, 0, 0, &mut masks);
        masks.sort_by(|&a, &b| {
            a.count_ones()
                .cmp(&b.count_ones())
                .then_with(|| lex_mask_cmp(a, b))
        });
        Ok(masks
            .into_iter()
            .map(|m| Antichain::from_mask(poset, m))
            .collect())
    }
}

fn lex_mask_cmp(a: ElemMask, b: ElemMask) -> std::cmp::Ordering {
    if a == b {
        return std::cmp::Ordering::Equal;
    }
    let d = (a ^ b).trailing_zeros();
    if a & (1 << d) != 0 {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

fn collect_antichains(poset: &Poset, start: usize, mask: ElemMask, out: &mut Vec<ElemMask>) {
    out.push(mask);
    for i in start..poset.len() {
        let related = poset.up_mask(i) | poset.down_mask(i);
        if related & mask == 0 {
            collect_antichains(poset, i + 1, mask | (1 << i), out);
        }
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members().into_iter().map(|l| l.as_str()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Serialize for Antichain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Antichain", 1)?;
        s.serialize_field("members", &self.members())?;
        s.end()
    }
}
