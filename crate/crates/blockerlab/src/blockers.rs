//! The order-theoretic blocker map, deletion operator, and contraction
//! operator on the lattice of antichains, plus the verifiers for the
//! inequalities they satisfy.
//!
//! For a nontrivial element `a` the blocker `b(a)` is the set of atoms below
//! `a`. For a nontrivial antichain the blocker is the lattice meet of the
//! element-wise blockers, and the map swaps the two trivial antichains.
//! Deletion and contraction take an atom subset `X`: on a single element
//! they case-split on how `b(a)` meets `X`, and on a nontrivial antichain
//! they join the element-wise results.
//!
//! Deletion is a coclosure operator (monotone, decreasing, idempotent) on
//! every such lattice. Contraction is extensive and idempotent on every
//! such lattice and monotone on subset lattices and chains, but it is *not*
//! monotone on arbitrary bounded posets — [`verify_operator_laws`] exists to
//! check the laws per instance, and its tests pin a minimal counterexample.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::antichain::Antichain;
use crate::label::Label;
use crate::poset::{ElemMask, Poset, PosetError};
use crate::report::VerificationReport;

/// A subset of the atoms of a poset, the `X` of deletion and contraction.
///
/// Labels outside the atom set are rejected outright rather than silently
/// intersected away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSubset {
    poset: Arc<Poset>,
    mask: ElemMask,
}

impl AtomSubset {
    pub fn new(poset: &Arc<Poset>, members: &[Label]) -> Result<Self, PosetError> {
        let mut mask = 0;
        for label in members {
            let i = poset.index_of(label)?;
            if poset.atoms_mask() & (1 << i) == 0 {
                return Err(PosetError::NotAnAtom(label.clone()));
            }
            mask |= 1 << i;
        }
        Ok(AtomSubset {
            poset: Arc::clone(poset),
            mask,
        })
    }

    pub fn empty(poset: &Arc<Poset>) -> Self {
        AtomSubset {
            poset: Arc::clone(poset),
            mask: 0,
        }
    }

    /// The full atom set of the poset.
    pub fn all(poset: &Arc<Poset>) -> Self {
        AtomSubset {
            poset: Arc::clone(poset),
            mask: poset.atoms_mask(),
        }
    }

    /// All subsets of the atom set, sorted by (size, then lexicographically).
    pub fn enumerate(poset: &Arc<Poset>) -> Vec<AtomSubset> {
        let atoms = poset.atoms_mask();
        let mut masks = Vec::new();
        let mut s = atoms;
        loop {
            masks.push(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & atoms;
        }
        masks.sort_by(|&a, &b| {
            a.count_ones().cmp(&b.count_ones()).then_with(|| {
                if a == b {
                    std::cmp::Ordering::Equal
                } else if a & (1 << (a ^ b).trailing_zeros()) != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
        });
        masks
            .into_iter()
            .map(|mask| AtomSubset {
                poset: Arc::clone(poset),
                mask,
            })
            .collect()
    }

    pub fn members(&self) -> Vec<&Label> {
        self.poset.labels_of_mask(self.mask)
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    fn check_poset(&self, poset: &Arc<Poset>) -> Result<(), PosetError> {
        if Arc::ptr_eq(&self.poset, poset) || self.poset == *poset {
            Ok(())
        } else {
            Err(PosetError::MismatchedPoset)
        }
    }
}

impl fmt::Display for AtomSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members().into_iter().map(|l| l.as_str()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Atoms below element `i`, as a mask.
fn atom_ideal(poset: &Poset, i: usize) -> ElemMask {
    poset.down_mask(i) & poset.atoms_mask()
}

/// Filter of an antichain-of-atoms mask intersected over all elements of
/// `antichain`, then minimized: the mask-level lattice meet of the
/// element-wise blockers.
fn bmap_mask(poset: &Poset, antichain: ElemMask) -> ElemMask {
    let least = 1 << poset.least_idx();
    if antichain == 0 {
        return least;
    }
    if antichain == least {
        return 0;
    }
    let mut inter = poset.full_mask();
    let mut rest = antichain;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        inter &= poset.filter_mask(atom_ideal(poset, i));
        rest &= rest - 1;
    }
    poset.min_mask(inter)
}

fn delete_element_mask(poset: &Poset, i: usize, x: ElemMask) -> ElemMask {
    if atom_ideal(poset, i) & x == 0 {
        1 << i
    } else {
        0
    }
}

fn contract_element_mask(poset: &Poset, i: usize, x: ElemMask) -> ElemMask {
    let atoms_below = atom_ideal(poset, i);
    if atoms_below & x == 0 {
        1 << i
    } else if atoms_below & !x == 0 {
        1 << poset.least_idx()
    } else {
        bmap_mask(poset, atoms_below & !x)
    }
}

fn delete_mask(poset: &Poset, antichain: ElemMask, x: ElemMask) -> ElemMask {
    let least = 1 << poset.least_idx();
    if antichain == 0 || antichain == least {
        return antichain;
    }
    let mut union = 0;
    let mut rest = antichain;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        union |= poset.filter_mask(delete_element_mask(poset, i, x));
        rest &= rest - 1;
    }
    poset.min_mask(union)
}

fn contract_mask(poset: &Poset, antichain: ElemMask, x: ElemMask) -> ElemMask {
    let least = 1 << poset.least_idx();
    if antichain == 0 || antichain == least {
        return antichain;
    }
    let mut union = 0;
    let mut rest = antichain;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        union |= poset.filter_mask(contract_element_mask(poset, i, x));
        rest &= rest - 1;
    }
    poset.min_mask(union)
}

/// The blocker of a nontrivial one-element antichain `{a}`: the atoms below
/// `a`, which always form a nonempty antichain.
pub fn bmap_element(poset: &Arc<Poset>, a: &Label) -> Result<Antichain, PosetError> {
    let i = poset.index_of(a)?;
    if i == poset.least_idx() {
        return Err(PosetError::LeastNotAllowed);
    }
    Ok(Antichain::from_mask(poset, atom_ideal(poset, i)))
}

/// Deletion of the one-element antichain `{a}` by the atom subset `x`.
pub fn delete_element(
    poset: &Arc<Poset>,
    a: &Label,
    x: &AtomSubset,
) -> Result<Antichain, PosetError> {
    x.check_poset(poset)?;
    let i = poset.index_of(a)?;
    if i == poset.least_idx() {
        return Err(PosetError::LeastNotAllowed);
    }
    Ok(Antichain::from_mask(
        poset,
        delete_element_mask(poset, i, x.mask),
    ))
}

/// Contraction of the one-element antichain `{a}` by the atom subset `x`.
pub fn contract_element(
    poset: &Arc<Poset>,
    a: &Label,
    x: &AtomSubset,
) -> Result<Antichain, PosetError> {
    x.check_poset(poset)?;
    let i = poset.index_of(a)?;
    if i == poset.least_idx() {
        return Err(PosetError::LeastNotAllowed);
    }
    Ok(Antichain::from_mask(
        poset,
        contract_element_mask(poset, i, x.mask),
    ))
}

impl Antichain {
    /// The order-theoretic blocker: the meet of the element-wise blockers
    /// for a nontrivial antichain; swaps the trivial antichains.
    pub fn bmap(&self) -> Antichain {
        Antichain::from_mask(self.poset(), bmap_mask(self.poset(), self.mask()))
    }

    /// Deletion by an atom subset: the join of the element-wise deletions
    /// for a nontrivial antichain; fixes the trivial antichains.
    pub fn delete(&self, x: &AtomSubset) -> Result<Antichain, PosetError> {
        x.check_poset(self.poset())?;
        Ok(Antichain::from_mask(
            self.poset(),
            delete_mask(self.poset(), self.mask(), x.mask),
        ))
    }

    /// Contraction by an atom subset: the join of the element-wise
    /// contractions for a nontrivial antichain; fixes the trivial
    /// antichains.
    pub fn contract(&self, x: &AtomSubset) -> Result<Antichain, PosetError> {
        x.check_poset(self.poset())?;
        Ok(Antichain::from_mask(
            self.poset(),
            contract_mask(self.poset(), self.mask(), x.mask),
        ))
    }
}

/// Checks the two lower bounds tying the blocker to deletion and
/// contraction: `b(b(A) \ X) >= A / X` and `b(b(A) / X) >= A \ X`.
pub fn verify_lemma(a: &Antichain, x: &AtomSubset) -> Result<VerificationReport, PosetError> {
    x.check_poset(a.poset())?;
    let b = a.bmap();
    let lhs_first = b.delete(x)?.bmap();
    let rhs_first = a.contract(x)?;
    if !rhs_first.leq(&lhs_first)? {
        return Ok(VerificationReport::fail(
            "lemma",
            1,
            json!({
                "antichain": a,
                "x": x.members(),
                "relation": "blocker of deleted blocker vs contraction",
                "lhs": lhs_first,
                "rhs": rhs_first,
            }),
        ));
    }
    let lhs_second = b.contract(x)?.bmap();
    let rhs_second = a.delete(x)?;
    if !rhs_second.leq(&lhs_second)? {
        return Ok(VerificationReport::fail(
            "lemma",
            1,
            json!({
                "antichain": a,
                "x": x.members(),
                "relation": "blocker of contracted blocker vs deletion",
                "lhs": lhs_second,
                "rhs": rhs_second,
            }),
        ));
    }
    Ok(VerificationReport::pass("lemma", 1))
}

/// Checks the five-term interleaving chain
/// `b(A)\X <= b(A/X) <= b(A) <= b(A)/X <= b(A\X)`; the report always lists
/// all five computed values.
pub fn verify_corollary(a: &Antichain, x: &AtomSubset) -> Result<VerificationReport, PosetError> {
    x.check_poset(a.poset())?;
    let b = a.bmap();
    let chain = [
        b.delete(x)?,
        a.contract(x)?.bmap(),
        b.clone(),
        b.contract(x)?,
        a.delete(x)?.bmap(),
    ];
    let names: Vec<String> = chain.iter().map(|c| c.to_string()).collect();
    let details = json!({ "chain": names });
    for (i, pair) in chain.windows(2).enumerate() {
        if !pair[0].leq(&pair[1])? {
            return Ok(VerificationReport::fail(
                "corollary",
                1,
                json!({
                    "antichain": a,
                    "x": x.members(),
                    "violated_step": i,
                    "lhs": pair[0],
                    "rhs": pair[1],
                }),
            )
            .with_details(details));
        }
    }
    Ok(VerificationReport::pass("corollary", 1).with_details(details))
}

/// Checks that applying the blocker three times equals applying it once.
pub fn verify_triple_bmap(a: &Antichain) -> VerificationReport {
    let once = a.bmap();
    let thrice = once.bmap().bmap();
    if once == thrice {
        VerificationReport::pass("triple-blocker", 1)
    } else {
        VerificationReport::fail(
            "triple-blocker",
            1,
            json!({
                "antichain": a,
                "once": once,
                "thrice": thrice,
            }),
        )
    }
}

/// Checks over the whole carrier that deletion is a coclosure operator
/// (monotone, decreasing, idempotent) and contraction a closure operator
/// (monotone, increasing, idempotent).
///
/// Deletion passes everywhere; contraction can fail the monotonicity law on
/// posets where distinct elements share their atom set, and the report then
/// carries the violating pair.
pub fn verify_operator_laws(
    poset: &Arc<Poset>,
    x: &AtomSubset,
    limit: usize,
) -> Result<VerificationReport, PosetError> {
    x.check_poset(poset)?;
    let carrier = Antichain::enumerate(poset, limit)?;
    let filters: Vec<ElemMask> = carrier.iter().map(|a| a.filter_mask()).collect();
    let index: HashMap<ElemMask, usize> = carrier
        .iter()
        .enumerate()
        .map(|(i, a)| (a.mask(), i))
        .collect();
    let deleted: Vec<usize> = carrier
        .iter()
        .map(|a| index[&delete_mask(poset, a.mask(), x.mask)])
        .collect();
    let contracted: Vec<usize> = carrier
        .iter()
        .map(|a| index[&contract_mask(poset, a.mask(), x.mask)])
        .collect();

    let leq = |i: usize, j: usize| filters[i] & !filters[j] == 0;
    let witness = |law: &str, a: usize, b: Option<usize>| {
        let mut w = json!({
            "law": law,
            "x": x.members(),
            "antichain": carrier[a],
        });
        if let Some(b) = b {
            w["other"] = serde_json::to_value(&carrier[b]).unwrap();
        }
        VerificationReport::fail("operator-laws", carrier.len() as u64, w)
    };

    for i in 0..carrier.len() {
        if !leq(deleted[i], i) {
            return Ok(witness("deletion-decreasing", i, None));
        }
        if deleted[deleted[i]] != deleted[i] {
            return Ok(witness("deletion-idempotent", i, None));
        }
        if !leq(i, contracted[i]) {
            return Ok(witness("contraction-increasing", i, None));
        }
        if contracted[contracted[i]] != contracted[i] {
            return Ok(witness("contraction-idempotent", i, None));
        }
        for j in 0..carrier.len() {
            if leq(i, j) {
                if !leq(deleted[i], deleted[j]) {
                    return Ok(witness("deletion-monotone", i, Some(j)));
                }
                if !leq(contracted[i], contracted[j]) {
                    return Ok(witness("contraction-monotone", i, Some(j)));
                }
            }
        }
    }
    Ok(
        VerificationReport::pass("operator-laws", carrier.len() as u64).with_details(json!({
            "carrier": carrier.len(),
            "x": x.members(),
        })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::{chain3, diamond};

    fn lab(s: &str) -> Label {
        Label::new(s)
    }

    fn labels(names: &[&str]) -> Vec<Label> {
        names.iter().map(|&s| Label::new(s)).collect()
    }

    fn ac(poset: &Arc<Poset>, names: &[&str]) -> Antichain {
        Antichain::new(poset, &labels(names)).unwrap()
    }

    fn atoms(poset: &Arc<Poset>, names: &[&str]) -> AtomSubset {
        AtomSubset::new(poset, &labels(names)).unwrap()
    }

    #[test]
    fn element_blocker_collects_atoms_below() {
        let d = Arc::new(diamond());
        assert_eq!(bmap_element(&d, &lab("t")).unwrap(), ac(&d, &["a", "b"]));
        assert_eq!(bmap_element(&d, &lab("a")).unwrap(), ac(&d, &["a"]));
        let c = Arc::new(chain3());
        assert_eq!(bmap_element(&c, &lab("t")).unwrap(), ac(&c, &["a"]));
    }

    #[test]
    fn element_blocker_rejects_the_least_element() {
        let d = Arc::new(diamond());
        assert_eq!(
            bmap_element(&d, &lab("0")).unwrap_err(),
            PosetError::LeastNotAllowed
        );
        let x = AtomSubset::empty(&d);
        assert_eq!(
            delete_element(&d, &lab("0"), &x).unwrap_err(),
            PosetError::LeastNotAllowed
        );
        assert_eq!(
            contract_element(&d, &lab("0"), &x).unwrap_err(),
            PosetError::LeastNotAllowed
        );
    }

    #[test]
    fn blocker_meets_elementwise_blockers() {
        let d = Arc::new(diamond());
        assert_eq!(ac(&d, &["a", "b"]).bmap(), ac(&d, &["t"]));
        assert_eq!(ac(&d, &["t"]).bmap(), ac(&d, &["a", "b"]));
    }

    #[test]
    fn blocker_swaps_trivial_antichains() {
        let d = Arc::new(diamond());
        assert_eq!(Antichain::bottom(&d).bmap(), Antichain::top(&d));
        assert_eq!(Antichain::top(&d).bmap(), Antichain::bottom(&d));
    }

    #[test]
    fn atom_subsets_reject_non_atoms() {
        let d = Arc::new(diamond());
        assert_eq!(
            AtomSubset::new(&d, &labels(&["t"])).unwrap_err(),
            PosetError::NotAnAtom(lab("t"))
        );
        assert_eq!(
            AtomSubset::new(&d, &labels(&["0"])).unwrap_err(),
            PosetError::NotAnAtom(lab("0"))
        );
    }

    #[test]
    fn delete_element_cases() {
        let d = Arc::new(diamond());
        let x = atoms(&d, &["a"]);
        assert!(delete_element(&d, &lab("t"), &x).unwrap().is_bottom());
        assert_eq!(delete_element(&d, &lab("b"), &x).unwrap(), ac(&d, &["b"]));
        let none = AtomSubset::empty(&d);
        assert_eq!(delete_element(&d, &lab("t"), &none).unwrap(), ac(&d, &["t"]));
    }

    #[test]
    fn contract_element_cases() {
        let d = Arc::new(diamond());
        assert_eq!(
            contract_element(&d, &lab("t"), &atoms(&d, &["a"])).unwrap(),
            ac(&d, &["b"])
        );
        assert_eq!(
            contract_element(&d, &lab("t"), &atoms(&d, &["a", "b"])).unwrap(),
            Antichain::top(&d)
        );
        assert_eq!(
            contract_element(&d, &lab("b"), &atoms(&d, &["a"])).unwrap(),
            ac(&d, &["b"])
        );
    }

    #[test]
    fn delete_and_contract_join_elementwise_results() {
        let d = Arc::new(diamond());
        let x = atoms(&d, &["a"]);
        assert_eq!(ac(&d, &["a", "b"]).delete(&x).unwrap(), ac(&d, &["b"]));
        assert_eq!(ac(&d, &["t"]).contract(&x).unwrap(), ac(&d, &["b"]));
    }

    #[test]
    fn trivial_antichains_are_fixed_points() {
        let d = Arc::new(diamond());
        for x in AtomSubset::enumerate(&d) {
            assert!(Antichain::bottom(&d).delete(&x).unwrap().is_bottom());
            assert!(Antichain::bottom(&d).contract(&x).unwrap().is_bottom());
            assert!(Antichain::top(&d).delete(&x).unwrap().is_top());
            assert!(Antichain::top(&d).contract(&x).unwrap().is_top());
        }
    }

    #[test]
    fn lemma_example_on_the_diamond() {
        let d = Arc::new(diamond());
        let a = ac(&d, &["t"]);
        let x = atoms(&d, &["a"]);
        // Both sides of the first relation come out as {b} here.
        assert_eq!(a.bmap().delete(&x).unwrap().bmap(), ac(&d, &["b"]));
        assert_eq!(a.contract(&x).unwrap(), ac(&d, &["b"]));
        assert!(verify_lemma(&a, &x).unwrap().passed());
    }

    #[test]
    fn lemma_is_immediate_on_trivial_antichains() {
        let d = Arc::new(diamond());
        for x in AtomSubset::enumerate(&d) {
            assert!(verify_lemma(&Antichain::bottom(&d), &x).unwrap().passed());
            assert!(verify_lemma(&Antichain::top(&d), &x).unwrap().passed());
        }
    }

    #[test]
    fn lemma_sweeps_the_diamond() {
        let d = Arc::new(diamond());
        for a in Antichain::enumerate(&d, 20).unwrap() {
            for x in AtomSubset::enumerate(&d) {
                assert!(verify_lemma(&a, &x).unwrap().passed(), "failed at {a} {x}");
            }
        }
    }

    #[test]
    fn corollary_chain_on_the_diamond_example() {
        let d = Arc::new(diamond());
        let report = verify_corollary(&ac(&d, &["t"]), &atoms(&d, &["a"])).unwrap();
        assert!(report.passed());
        let chain = &report.details.unwrap()["chain"];
        assert_eq!(chain[0], "{b}");
        assert_eq!(chain[1], "{b}");
        assert_eq!(chain[2], "{a,b}");
        assert_eq!(chain[3], "{0}");
        assert_eq!(chain[4], "{0}");
    }

    #[test]
    fn corollary_sweeps_the_diamond() {
        let d = Arc::new(diamond());
        for a in Antichain::enumerate(&d, 20).unwrap() {
            for x in AtomSubset::enumerate(&d) {
                assert!(verify_corollary(&a, &x).unwrap().passed());
            }
        }
    }

    #[test]
    fn triple_blocker_examples() {
        let d = Arc::new(diamond());
        assert!(verify_triple_bmap(&ac(&d, &["t"])).passed());
        assert!(verify_triple_bmap(&Antichain::bottom(&d)).passed());
        for a in Antichain::enumerate(&d, 20).unwrap() {
            assert!(verify_triple_bmap(&a).passed());
        }
    }

    #[test]
    fn blocker_is_order_reversing_and_square_extensive_on_the_diamond() {
        let d = Arc::new(diamond());
        let carrier = Antichain::enumerate(&d, 20).unwrap();
        for a in &carrier {
            assert!(a.leq(&a.bmap().bmap()).unwrap(), "b(b({a})) >= {a}");
            for b in &carrier {
                if a.leq(b).unwrap() {
                    assert!(b.bmap().leq(&a.bmap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn operator_laws_on_the_diamond() {
        let d = Arc::new(diamond());
        let report = verify_operator_laws(&d, &atoms(&d, &["a"]), 20).unwrap();
        assert!(report.passed());
        assert_eq!(report.instances, 6);
    }

    #[test]
    fn empty_x_fixes_every_antichain() {
        let d = Arc::new(diamond());
        let x = AtomSubset::empty(&d);
        for a in Antichain::enumerate(&d, 20).unwrap() {
            assert_eq!(a.delete(&x).unwrap(), a);
            assert_eq!(a.contract(&x).unwrap(), a);
        }
        assert!(verify_operator_laws(&d, &x, 20).unwrap().passed());
    }

    #[test]
    fn mismatched_posets_are_rejected() {
        let d = Arc::new(diamond());
        let c = Arc::new(chain3());
        let x = atoms(&c, &["a"]);
        assert_eq!(
            ac(&d, &["a"]).delete(&x).unwrap_err(),
            PosetError::MismatchedPoset
        );
    }

    /// Minimal counterexample showing contraction is not monotone in
    /// general: with 0 < 1 < 4 < 5, 4 < 6, 0 < 2 < 3, 2 < 6 and X = {2},
    /// the blocker of 6 is {1,2} and of 4 is {1}, so {6}/X = b({1}) = {1}
    /// while {4}/X = {4}; but {6} <= {4} and {1} is not below {4}.
    /// Extensivity and idempotence still hold throughout this carrier.
    #[test]
    fn contraction_monotonicity_fails_on_a_nonatomistic_poset() {
        let names: Vec<Label> = (0..7).map(|i| Label::new(i.to_string())).collect();
        let edge = |a: usize, b: usize| (names[a].clone(), names[b].clone());
        let poset = Arc::new(
            Poset::new(
                names.clone(),
                &[
                    edge(0, 1),
                    edge(0, 2),
                    edge(1, 4),
                    edge(2, 3),
                    edge(2, 6),
                    edge(4, 5),
                    edge(4, 6),
                ],
            )
            .unwrap(),
        );
        let x = atoms(&poset, &["2"]);
        let six = ac(&poset, &["6"]);
        let four = ac(&poset, &["4"]);
        assert!(six.leq(&four).unwrap());
        assert_eq!(six.contract(&x).unwrap(), ac(&poset, &["1"]));
        assert_eq!(four.contract(&x).unwrap(), ac(&poset, &["4"]));
        assert!(!six.contract(&x).unwrap().leq(&four.contract(&x).unwrap()).unwrap());

        let report = verify_operator_laws(&poset, &x, 20).unwrap();
        assert!(report.failed());
        assert_eq!(report.witness.unwrap()["law"], "contraction-monotone");

        for a in Antichain::enumerate(&poset, 20).unwrap() {
            let contracted = a.contract(&x).unwrap();
            assert!(a.leq(&contracted).unwrap(), "extensive at {a}");
            assert_eq!(contracted.contract(&x).unwrap(), contracted, "idempotent at {a}");
            let deleted = a.delete(&x).unwrap();
            assert!(deleted.leq(&a).unwrap());
            assert_eq!(deleted.delete(&x).unwrap(), deleted);
        }
    }
}
