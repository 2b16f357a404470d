//! Generic verification of the interleaving theorem for triples of maps on
//! a finite poset.
//!
//! Maps are extensional tables, never code, so every condition is decidable
//! by enumeration. Given an order-preserving `delta`, an order-preserving
//! extensive `gamma`, and an order-reversing `beta` whose square is
//! extensive, either of the pointwise bounds
//!
//! ```text
//! beta(delta(beta(x))) >= gamma(x)        (the bdb hypothesis)
//! beta(gamma(beta(x))) >= delta(x)        (the bgb hypothesis)
//! ```
//!
//! forces the five-term chain
//! `delta(beta(z)) <= beta(gamma(z)) <= beta(z) <= gamma(beta(z)) <= beta(delta(z))`
//! at every point; when `beta` is an involution and a hypothesis holds with
//! equality, the outer inequalities of the chain become equalities. The
//! blocker, deletion, and contraction maps on a lattice of antichains are
//! the motivating instance, materialized here by tabulation.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::antichain::Antichain;
use crate::blockers::AtomSubset;
use crate::gen;
use crate::label::Label;
use crate::poset::{ElemMask, Poset, PosetError, MAX_POSET_ELEMENTS};
use crate::report::{ReportStatus, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("unknown element `{0}`")]
    UnknownElement(Label),
    #[error("element `{0}` is mapped more than once")]
    DuplicateMapping(Label),
    #[error("the map is not total: element `{0}` has no image")]
    NotTotal(Label),
    #[error("the map tables refer to different posets")]
    MismatchedPoset,
}

/// A total self-map of a poset, given extensionally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTable {
    poset: Arc<Poset>,
    images: Vec<usize>,
}

/// The wire form of a map table: `{"pairs": [[x, fx], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct MapPairs {
    pub pairs: Vec<(Label, Label)>,
}

impl MapTable {
    /// Builds a table from `(x, f(x))` pairs, checking totality.
    pub fn new(poset: &Arc<Poset>, pairs: &[(Label, Label)]) -> Result<Self, MapError> {
        let n = poset.len();
        let mut images: Vec<Option<usize>> = vec![None; n];
        for (x, fx) in pairs {
            let ix = poset
                .index_of(x)
                .map_err(|_| MapError::UnknownElement(x.clone()))?;
            let ifx = poset
                .index_of(fx)
                .map_err(|_| MapError::UnknownElement(fx.clone()))?;
            if images[ix].is_some() {
                return Err(MapError::DuplicateMapping(x.clone()));
            }
            images[ix] = Some(ifx);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| MapError::NotTotal(poset.elements()[i].clone())))
            .collect::<Result<Vec<usize>, _>>()?;
        Ok(MapTable {
            poset: Arc::clone(poset),
            images,
        })
    }

    pub fn identity(poset: &Arc<Poset>) -> Self {
        MapTable {
            poset: Arc::clone(poset),
            images: (0..poset.len()).collect(),
        }
    }

    pub(crate) fn from_images(poset: &Arc<Poset>, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), poset.len());
        debug_assert!(images.iter().all(|&i| i < poset.len()));
        MapTable {
            poset: Arc::clone(poset),
            images,
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn apply(&self, x: &Label) -> Result<&Label, MapError> {
        let i = self
            .poset
            .index_of(x)
            .map_err(|_| MapError::UnknownElement(x.clone()))?;
        Ok(self.poset.label(self.images[i]))
    }

    pub fn pairs(&self) -> Vec<(&Label, &Label)> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &fi)| (self.poset.label(i), self.poset.label(fi)))
            .collect()
    }

    fn same_poset(&self, other: &MapTable) -> Result<(), MapError> {
        if Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset {
            Ok(())
        } else {
            Err(MapError::MismatchedPoset)
        }
    }

    fn pair_witness(&self, i: usize, j: usize) -> Value {
        json!({
            "x": self.poset.label(i),
            "y": self.poset.label(j),
            "fx": self.poset.label(self.images[i]),
            "fy": self.poset.label(self.images[j]),
        })
    }

    /// Checks `x <= y` implies `f(x) <= f(y)` over all comparable pairs.
    pub fn check_order_preserving(&self) -> VerificationReport {
        let mut instances = 0;
        for i in 0..self.images.len() {
            for j in 0..self.images.len() {
                if self.poset.leq_idx(i, j) {
                    instances += 1;
                    if !self.poset.leq_idx(self.images[i], self.images[j]) {
                        return VerificationReport::fail(
                            "order-preserving",
                            instances,
                            self.pair_witness(i, j),
                        );
                    }
                }
            }
        }
        VerificationReport::pass("order-preserving", instances)
    }

    /// Checks `x <= y` implies `f(y) <= f(x)` over all comparable pairs.
    pub fn check_order_reversing(&self) -> VerificationReport {
        let mut instances = 0;
        for i in 0..self.images.len() {
            for j in 0..self.images.len() {
                if self.poset.leq_idx(i, j) {
                    instances += 1;
                    if !self.poset.leq_idx(self.images[j], self.images[i]) {
                        return VerificationReport::fail(
                            "order-reversing",
                            instances,
                            self.pair_witness(i, j),
                        );
                    }
                }
            }
        }
        VerificationReport::pass("order-reversing", instances)
    }

    /// Checks `f(x) >= x` at every point.
    pub fn check_extensive(&self) -> VerificationReport {
        let n = self.images.len() as u64;
        for (i, &fi) in self.images.iter().enumerate() {
            if !self.poset.leq_idx(i, fi) {
                return VerificationReport::fail(
                    "extensive",
                    n,
                    json!({
                        "x": self.poset.label(i),
                        "fx": self.poset.label(fi),
                    }),
                );
            }
        }
        VerificationReport::pass("extensive", n)
    }

    /// Checks `f(f(x)) >= x` at every point.
    pub fn check_square_extensive(&self) -> VerificationReport {
        let n = self.images.len() as u64;
        for i in 0..self.images.len() {
            let ffi = self.images[self.images[i]];
            if !self.poset.leq_idx(i, ffi) {
                return VerificationReport::fail(
                    "square-extensive",
                    n,
                    json!({
                        "x": self.poset.label(i),
                        "fx": self.poset.label(self.images[i]),
                        "ffx": self.poset.label(ffi),
                    }),
                );
            }
        }
        VerificationReport::pass("square-extensive", n)
    }

    /// Checks `f(f(f(x))) = f(x)` at every point. Meaningful after the map
    /// passed the order-reversing and square-extensive checks, which force
    /// this identity.
    pub fn check_triple_identity(&self) -> VerificationReport {
        let n = self.images.len() as u64;
        for i in 0..self.images.len() {
            let f1 = self.images[i];
            let f3 = self.images[self.images[f1]];
            if f1 != f3 {
                return VerificationReport::fail(
                    "triple-map",
                    n,
                    json!({
                        "x": self.poset.label(i),
                        "fx": self.poset.label(f1),
                        "fffx": self.poset.label(f3),
                    }),
                );
            }
        }
        VerificationReport::pass("triple-map", n)
    }

    fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &fi)| self.images[fi] == i)
    }
}

impl Serialize for MapTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = MapPairs {
            pairs: self
                .pairs()
                .into_iter()
                .map(|(x, fx)| (x.clone(), fx.clone()))
                .collect(),
        };
        repr.serialize(serializer)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum HypStatus {
    Fails,
    Holds,
    Equality,
}

impl HypStatus {
    fn holds(self) -> bool {
        self != HypStatus::Fails
    }

    fn name(self) -> &'static str {
        match self {
            HypStatus::Fails => "fails",
            HypStatus::Holds => "holds",
            HypStatus::Equality => "holds-with-equality",
        }
    }
}

/// Pointwise status of `composite(x) >= bound(x)`.
fn hypothesis_status(poset: &Poset, composite: &[usize], bound: &[usize]) -> HypStatus {
    let mut equality = true;
    for (c, b) in composite.iter().zip(bound) {
        if !poset.leq_idx(*b, *c) {
            return HypStatus::Fails;
        }
        equality &= c == b;
    }
    if equality {
        HypStatus::Equality
    } else {
        HypStatus::Holds
    }
}

fn compose3(outer: &[usize], mid: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[mid[i]]).collect()
}

/// Checks the bound `beta(delta(beta(x))) >= gamma(x)` at every point.
pub fn check_hypothesis_bdb(
    beta: &MapTable,
    delta: &MapTable,
    gamma: &MapTable,
) -> Result<VerificationReport, MapError> {
    beta.same_poset(delta)?;
    beta.same_poset(gamma)?;
    let composite = compose3(&beta.images, &delta.images, &beta.images);
    Ok(hypothesis_report(
        "hypothesis-bdb",
        beta.poset(),
        &composite,
        &gamma.images,
    ))
}

/// Checks the bound `beta(gamma(beta(x))) >= delta(x)` at every point.
pub fn check_hypothesis_bgb(
    beta: &MapTable,
    delta: &MapTable,
    gamma: &MapTable,
) -> Result<VerificationReport, MapError> {
    beta.same_poset(delta)?;
    beta.same_poset(gamma)?;
    let composite = compose3(&beta.images, &gamma.images, &beta.images);
    Ok(hypothesis_report(
        "hypothesis-bgb",
        beta.poset(),
        &composite,
        &delta.images,
    ))
}

fn hypothesis_report(
    relation: &str,
    poset: &Arc<Poset>,
    composite: &[usize],
    bound: &[usize],
) -> VerificationReport {
    let n = poset.len() as u64;
    for (i, (c, b)) in composite.iter().zip(bound).enumerate() {
        if !poset.leq_idx(*b, *c) {
            return VerificationReport::fail(
                relation,
                n,
                json!({
                    "x": poset.label(i),
                    "composite": poset.label(*c),
                    "bound": poset.label(*b),
                }),
            );
        }
    }
    let status = hypothesis_status(poset, composite, bound);
    VerificationReport::pass(relation, n).with_details(json!({ "status": status.name() }))
}

/// Runs the full engine: validates the side conditions on the three maps,
/// determines which hypotheses hold (and whether with equality), and if at
/// least one holds asserts the five-term chain at every point — plus the
/// chain equalities when `beta` is an involution and a hypothesis holds
/// with equality.
///
/// A report with status `inapplicable` means the side conditions failed or
/// neither hypothesis holds, so the theorem asserts nothing; `fail` is
/// reserved for genuine conclusion violations.
pub fn verify_theorem(
    beta: &MapTable,
    delta: &MapTable,
    gamma: &MapTable,
) -> Result<VerificationReport, MapError> {
    beta.same_poset(delta)?;
    beta.same_poset(gamma)?;
    let poset = beta.poset();
    let n = poset.len() as u64;

    let conditions = [
        ("delta-order-preserving", delta.check_order_preserving().passed()),
        ("gamma-order-preserving", gamma.check_order_preserving().passed()),
        ("gamma-extensive", gamma.check_extensive().passed()),
        ("beta-order-reversing", beta.check_order_reversing().passed()),
        ("beta-square-extensive", beta.check_square_extensive().passed()),
    ];
    let condition_map: serde_json::Map<String, Value> = conditions
        .iter()
        .map(|&(name, ok)| (name.to_string(), Value::Bool(ok)))
        .collect();
    if conditions.iter().any(|&(_, ok)| !ok) {
        return Ok(VerificationReport::inapplicable(
            "theorem",
            n,
            json!({
                "conditions": condition_map,
                "reason": "side conditions failed",
            }),
        ));
    }

    let b = &beta.images;
    let d = &delta.images;
    let g = &gamma.images;
    let bdb = hypothesis_status(poset, &compose3(b, d, b), g);
    let bgb = hypothesis_status(poset, &compose3(b, g, b), d);
    let involutive = beta.is_involution();
    let mut details = json!({
        "conditions": condition_map,
        "hypotheses": { "bdb": bdb.name(), "bgb": bgb.name() },
        "beta_involutive": involutive,
    });
    if !bdb.holds() && !bgb.holds() {
        details["reason"] = json!("neither hypothesis holds");
        return Ok(VerificationReport::inapplicable("theorem", n, details));
    }

    let assert_equalities =
        involutive && (bdb == HypStatus::Equality || bgb == HypStatus::Equality);
    details["asserted"] = if assert_equalities {
        json!(["chain", "chain-equalities"])
    } else {
        json!(["chain"])
    };

    for z in 0..poset.len() {
        let chain = [d[b[z]], b[g[z]], b[z], g[b[z]], b[d[z]]];
        let chain_ok = chain.windows(2).all(|w| poset.leq_idx(w[0], w[1]));
        let eq_ok = !assert_equalities || (chain[0] == chain[1] && chain[3] == chain[4]);
        if !chain_ok || !eq_ok {
            let labels: Vec<&Label> = chain.iter().map(|&i| poset.label(i)).collect();
            return Ok(VerificationReport::fail(
                "theorem",
                n,
                json!({
                    "z": poset.label(z),
                    "chain": labels,
                    "equalities_asserted": assert_equalities,
                }),
            )
            .with_details(details));
        }
    }
    Ok(VerificationReport::pass("theorem", n).with_details(details))
}

/// A lattice of antichains materialized as a poset, with the carrier kept
/// aligned to the element indices so maps on it can be tabulated.
pub struct AntLattice {
    lattice: Arc<Poset>,
    carrier: Vec<Antichain>,
    index: HashMap<ElemMask, usize>,
}

/// Materializes the lattice of antichains of `base` as a poset whose
/// elements are named by the antichains they stand for.
pub fn ant_lattice(base: &Arc<Poset>, limit: usize) -> Result<AntLattice, PosetError> {
    let carrier = Antichain::enumerate(base, limit)?;
    if carrier.len() > MAX_POSET_ELEMENTS {
        return Err(PosetError::TooManyElements(carrier.len()));
    }
    let labels: Vec<Label> = carrier.iter().map(|a| Label::new(a.to_string())).collect();
    let mut generators = Vec::new();
    for (i, a) in carrier.iter().enumerate() {
        for (j, b) in carrier.iter().enumerate() {
            if i != j && a.leq(b).unwrap_or(false) {
                generators.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let lattice = Arc::new(Poset::new(labels.clone(), &generators)?);
    let by_label: HashMap<&Label, usize> = labels.iter().zip(0..).collect();
    let mut aligned: Vec<Antichain> = Vec::with_capacity(carrier.len());
    for element in lattice.elements() {
        aligned.push(carrier[by_label[element]].clone());
    }
    let index = aligned
        .iter()
        .enumerate()
        .map(|(i, a)| (a.mask(), i))
        .collect();
    Ok(AntLattice {
        lattice,
        carrier: aligned,
        index,
    })
}

impl AntLattice {
    pub fn lattice(&self) -> &Arc<Poset> {
        &self.lattice
    }

    /// The carrier antichains, aligned with the lattice element order.
    pub fn carrier(&self) -> &[Antichain] {
        &self.carrier
    }

    /// Tabulates a self-map of the carrier as a map table on the lattice.
    pub fn tabulate<F>(&self, f: F) -> MapTable
    where
        F: Fn(&Antichain) -> Antichain,
    {
        let images = self.carrier.iter().map(|a| self.index[&f(a).mask()]).collect();
        MapTable::from_images(&self.lattice, images)
    }

    pub fn bmap_table(&self) -> MapTable {
        self.tabulate(|a| a.bmap())
    }

    pub fn delete_table(&self, x: &AtomSubset) -> Result<MapTable, PosetError> {
        let images = self
            .carrier
            .iter()
            .map(|a| Ok(self.index[&a.delete(x)?.mask()]))
            .collect::<Result<Vec<usize>, PosetError>>()?;
        Ok(MapTable::from_images(&self.lattice, images))
    }

    pub fn contract_table(&self, x: &AtomSubset) -> Result<MapTable, PosetError> {
        let images = self
            .carrier
            .iter()
            .map(|a| Ok(self.index[&a.contract(x)?.mask()]))
            .collect::<Result<Vec<usize>, PosetError>>()?;
        Ok(MapTable::from_images(&self.lattice, images))
    }
}

/// Configuration for the randomized theorem sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    /// Posets are drawn with sizes in `2..=max_size`.
    pub max_size: usize,
    /// Target number of applicable instances to accumulate.
    pub target_applicable: u64,
    pub seed: u64,
    /// Hard cap on generation attempts, applicable or not.
    pub max_attempts: u64,
}

impl SweepConfig {
    pub fn new(max_size: usize, target_applicable: u64, seed: u64) -> Self {
        SweepConfig {
            max_size,
            target_applicable,
            seed,
            max_attempts: target_applicable.saturating_mul(200).max(10_000),
        }
    }
}

/// Aggregate result of a randomized theorem sweep. `failed` must be zero
/// for a healthy build.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub seed: u64,
    /// Triples generated with all side conditions satisfied.
    pub generated: u64,
    /// Triples for which at least one hypothesis held.
    pub applicable: u64,
    /// Conclusion assertions performed (one per applicable triple).
    pub asserted: u64,
    /// Applicable triples in the involutive-equality subclass.
    pub equality_cases: u64,
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<VerificationReport>,
}

/// Draws random `(poset, beta, delta, gamma)` instances by rejection
/// sampling each map inside its side-condition class, then runs the
/// theorem engine on every instance until enough applicable ones have been
/// seen or the attempt budget runs out.
pub fn sweep_theorem(config: &SweepConfig) -> SweepSummary {
    const MAP_TRIES: u32 = 4000;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut summary = SweepSummary {
        seed: config.seed,
        generated: 0,
        applicable: 0,
        asserted: 0,
        equality_cases: 0,
        failed: 0,
        first_failure: None,
    };
    let mut attempts = 0;
    while summary.applicable < config.target_applicable && attempts < config.max_attempts {
        attempts += 1;
        let size = rand::Rng::random_range(&mut rng, 2..=config.max_size.max(2));
        let poset = Arc::new(gen::random_poset(size, &mut rng));
        let Some(beta) = gen::random_beta(&poset, &mut rng, MAP_TRIES) else {
            continue;
        };
        let Some(delta) = gen::random_delta(&poset, &mut rng, MAP_TRIES) else {
            continue;
        };
        let Some(gamma) = gen::random_gamma(&poset, &mut rng, MAP_TRIES) else {
            continue;
        };
        summary.generated += 1;
        let report = verify_theorem(&beta, &delta, &gamma).expect("same poset by construction");
        match report.status {
            ReportStatus::Inapplicable => {}
            status => {
                summary.applicable += 1;
                summary.asserted += 1;
                let equalities = report
                    .details
                    .as_ref()
                    .and_then(|d| d["asserted"].as_array())
                    .map(|a| a.len() == 2)
                    .unwrap_or(false);
                if equalities {
                    summary.equality_cases += 1;
                }
                if status == ReportStatus::Fail {
                    summary.failed += 1;
                    if summary.first_failure.is_none() {
                        summary.first_failure = Some(report);
                    }
                }
            }
        }
    }
    summary
}
