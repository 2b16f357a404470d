//! Finite bounded posets given by cover relations, with precomputed order
//! matrices, ideals, filters, atoms, and minimal-element extraction.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::label::Label;

/// Elements are indexed into 128-bit masks.
pub const MAX_POSET_ELEMENTS: usize = 128;

/// Default cap on poset size for operations that enumerate all antichains.
pub const DEFAULT_ENUM_LIMIT: usize = 20;

pub(crate) type ElemMask = u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element `{0}`")]
    UnknownElement(Label),
    #[error("cover pair ({0},{0}) relates an element to itself")]
    SelfCover(Label),
    #[error("cycle detected: `{a}` and `{b}` are mutually below each other")]
    CycleDetected { a: Label, b: Label },
    #[error("the poset has no least element")]
    NoLeastElement,
    #[error("the poset has no greatest element (required in strict bounded mode)")]
    NoGreatestElement,
    #[error("a poset needs at least two elements, got {0}")]
    TooFewElements(usize),
    #[error("the poset has {0} elements; at most {MAX_POSET_ELEMENTS} are supported")]
    TooManyElements(usize),
    #[error("`{a}` and `{b}` are comparable, so the input is not an antichain")]
    NotAntichain { a: Label, b: Label },
    #[error("the least element only forms the trivial one-element antichain")]
    LeastNotAllowed,
    #[error("`{0}` is not an atom")]
    NotAnAtom(Label),
    #[error("the antichains refer to different posets")]
    MismatchedPoset,
    #[error("enumerating antichains of a {size}-element poset exceeds the limit of {limit}")]
    EnumerationLimit { size: usize, limit: usize },
}

/// A finite poset with a least element, stored as dense order masks over a
/// fixed element ordering.
///
/// `up[i]` holds the filter of element `i` (everything above it, itself
/// included) and `down[i]` its ideal; all order queries reduce to mask
/// arithmetic. Values are immutable after construction and safe to share.
#[derive(Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<Label>,
    covers: Vec<(usize, usize)>,
    up: Vec<ElemMask>,
    down: Vec<ElemMask>,
    least: usize,
    greatest: Option<usize>,
    atoms: ElemMask,
}

impl Poset {
    /// Builds a poset from order-generating pairs `(x, y)` meaning `x < y`.
    ///
    /// The reflexive-transitive closure of the pairs is computed and
    /// validated as a partial order with a least element; the stored cover
    /// list is the canonical transitive reduction of that order.
    pub fn new(elements: Vec<Label>, covers: &[(Label, Label)]) -> Result<Self, PosetError> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let n = elements.len();
        if n <= 1 {
            return Err(PosetError::TooFewElements(n));
        }
        if n > MAX_POSET_ELEMENTS {
            return Err(PosetError::TooManyElements(n));
        }

        let index_of = |label: &Label| -> Result<usize, PosetError> {
            elements
                .binary_search(label)
                .map_err(|_| PosetError::UnknownElement(label.clone()))
        };

        let mut up: Vec<ElemMask> = (0..n).map(|i| 1 << i).collect();
        for (x, y) in covers {
            let ix = index_of(x)?;
            let iy = index_of(y)?;
            if ix == iy {
                return Err(PosetError::SelfCover(x.clone()));
            }
            up[ix] |= 1 << iy;
        }

        // Reflexive-transitive closure by iterated propagation.
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut m = up[i];
                let mut rest = m;
                while rest != 0 {
                    let j = rest.trailing_zeros() as usize;
                    m |= up[j];
                    rest &= rest - 1;
                }
                if m != up[i] {
                    up[i] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        for i in 0..n {
            for j in (i + 1)..n {
                if up[i] & (1 << j) != 0 && up[j] & (1 << i) != 0 {
                    return Err(PosetError::CycleDetected {
                        a: elements[i].clone(),
                        b: elements[j].clone(),
                    });
                }
            }
        }

        let mut down: Vec<ElemMask> = vec![0; n];
        for i in 0..n {
            let mut rest = up[i];
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                down[j] |= 1 << i;
                rest &= rest - 1;
            }
        }

        let full = mask_all(n);
        let least = (0..n)
            .find(|&i| up[i] == full)
            .ok_or(PosetError::NoLeastElement)?;
        let greatest = (0..n).find(|&i| down[i] == full);

        let mut atoms: ElemMask = 0;
        for i in 0..n {
            if i != least && down[i] == (1 << least) | (1 << i) {
                atoms |= 1 << i;
            }
        }

        // Canonical covers: strictly comparable pairs with nothing between.
        let mut reduced = Vec::new();
        for i in 0..n {
            let mut rest = up[i] & !(1 << i);
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                if up[i] & down[j] == (1 << i) | (1 << j) {
                    reduced.push((i, j));
                }
                rest &= rest - 1;
            }
        }
        reduced.sort_unstable();

        Ok(Poset {
            elements,
            covers: reduced,
            up,
            down,
            least,
            greatest,
            atoms,
        })
    }

    /// Like [`Poset::new`] but additionally requires a greatest element.
    pub fn new_strict(elements: Vec<Label>, covers: &[(Label, Label)]) -> Result<Self, PosetError> {
        let poset = Poset::new(elements, covers)?;
        if poset.greatest.is_none() {
            return Err(PosetError::NoGreatestElement);
        }
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn least(&self) -> &Label {
        &self.elements[self.least]
    }

    pub fn greatest(&self) -> Option<&Label> {
        self.greatest.map(|i| &self.elements[i])
    }

    pub fn atoms(&self) -> Vec<&Label> {
        self.labels_of_mask(self.atoms)
    }

    /// The canonical cover pairs `(x, y)` with `y` covering `x`.
    pub fn covers(&self) -> Vec<(&Label, &Label)> {
        self.covers
            .iter()
            .map(|&(i, j)| (&self.elements[i], &self.elements[j]))
            .collect()
    }

    /// Whether `x <= y`.
    pub fn leq(&self, x: &Label, y: &Label) -> Result<bool, PosetError> {
        let ix = self.index_of(x)?;
        let iy = self.index_of(y)?;
        Ok(self.leq_idx(ix, iy))
    }

    /// The order ideal generated by an antichain: everything below some
    /// member.
    pub fn ideal(&self, antichain: &[Label]) -> Result<Vec<Label>, PosetError> {
        let mask = self.antichain_mask(antichain)?;
        Ok(self.owned_labels(self.ideal_mask(mask)))
    }

    /// The order filter generated by an antichain: everything above some
    /// member.
    pub fn filter(&self, antichain: &[Label]) -> Result<Vec<Label>, PosetError> {
        let mask = self.antichain_mask(antichain)?;
        Ok(self.owned_labels(self.filter_mask(mask)))
    }

    /// The minimal elements of an arbitrary subset; always an antichain.
    pub fn min_elements(&self, subset: &[Label]) -> Result<Vec<Label>, PosetError> {
        let mask = self.mask_of(subset)?;
        Ok(self.owned_labels(self.min_mask(mask)))
    }

    pub(crate) fn index_of(&self, label: &Label) -> Result<usize, PosetError> {
        self.elements
            .binary_search(label)
            .map_err(|_| PosetError::UnknownElement(label.clone()))
    }

    pub(crate) fn label(&self, i: usize) -> &Label {
        &self.elements[i]
    }

    pub(crate) fn least_idx(&self) -> usize {
        self.least
    }

    pub(crate) fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up[i] & (1 << j) != 0
    }

    pub(crate) fn up_mask(&self, i: usize) -> ElemMask {
        self.up[i]
    }

    pub(crate) fn down_mask(&self, i: usize) -> ElemMask {
        self.down[i]
    }

    pub(crate) fn atoms_mask(&self) -> ElemMask {
        self.atoms
    }

    pub(crate) fn full_mask(&self) -> ElemMask {
        mask_all(self.elements.len())
    }

    pub(crate) fn filter_mask(&self, antichain: ElemMask) -> ElemMask {
        self.fold_masks(antichain, &self.up)
    }

    pub(crate) fn ideal_mask(&self, antichain: ElemMask) -> ElemMask {
        self.fold_masks(antichain, &self.down)
    }

    fn fold_masks(&self, of: ElemMask, table: &[ElemMask]) -> ElemMask {
        let mut out = 0;
        let mut rest = of;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= table[i];
            rest &= rest - 1;
        }
        out
    }

    /// Members of `subset` with no strictly smaller element in `subset`.
    pub(crate) fn min_mask(&self, subset: ElemMask) -> ElemMask {
        let mut out = 0;
        let mut rest = subset;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            if self.down[i] & subset == 1 << i {
                out |= 1 << i;
            }
            rest &= rest - 1;
        }
        out
    }

    pub(crate) fn is_antichain_mask(&self, mask: ElemMask) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            if (self.up[i] | self.down[i]) & mask != 1 << i {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    pub(crate) fn mask_of(&self, labels: &[Label]) -> Result<ElemMask, PosetError> {
        let mut mask = 0;
        for label in labels {
            mask |= 1 << self.index_of(label)?;
        }
        Ok(mask)
    }

    /// Validates that the labels form an antichain and returns their mask.
    pub(crate) fn antichain_mask(&self, labels: &[Label]) -> Result<ElemMask, PosetError> {
        let mask = self.mask_of(labels)?;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            let related = (self.up[i] | self.down[i]) & mask & !(1 << i);
            if related != 0 {
                let j = related.trailing_zeros() as usize;
                return Err(PosetError::NotAntichain {
                    a: self.elements[i].clone(),
                    b: self.elements[j].clone(),
                });
            }
            rest &= rest - 1;
        }
        Ok(mask)
    }

    pub(crate) fn labels_of_mask(&self, mask: ElemMask) -> Vec<&Label> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l)
            .collect()
    }

    fn owned_labels(&self, mask: ElemMask) -> Vec<Label> {
        self.labels_of_mask(mask).into_iter().cloned().collect()
    }
}

pub(crate) fn mask_all(n: usize) -> ElemMask {
    if n == MAX_POSET_ELEMENTS {
        ElemMask::MAX
    } else {
        (1 << n) - 1
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.elements.iter().map(|l| l.as_str()).collect();
        write!(
            f,
            "poset on {{{}}} with {} covers, least {}",
            names.join(","),
            self.covers.len(),
            self.least()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct PosetRepr {
    elements: Vec<Label>,
    covers: Vec<(Label, Label)>,
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PosetRepr {
            elements: self.elements.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PosetRepr::deserialize(deserializer)?;
        Poset::new(repr.elements, &repr.covers).map_err(D::Error::custom)
    }
}
