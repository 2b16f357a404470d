//! Blocker, deletion, and contraction calculus on clutters and on lattices
//! of antichains, with exhaustive desk-scale verifiers.
//!
//! The crate has two symmetric halves tied together by a bridge:
//!
//! - [`clutter`]: Sperner families on a finite ground set with the
//!   set-theoretic blocker, deletion, and contraction maps, and checkers
//!   for the blocker involution and the deletion/contraction duality
//!   identities.
//! - [`poset`], [`antichain`], [`blockers`]: finite bounded posets, their
//!   distributive lattice of antichains ordered by filter inclusion, and
//!   the order-theoretic blocker, deletion, and contraction with checkers
//!   for the inequalities relating them.
//! - [`maps`]: a generic engine that takes three extensional map tables on
//!   any finite bounded poset and verifies the interleaving theorem behind
//!   those inequalities — hypotheses, conclusions, and the equality case.
//! - [`bridge`]: the embedding of clutters as antichains of the subset
//!   lattice, cross-checking that the two halves compute the same maps.
//! - [`gen`]: seeded random generators for posets, clutters, and map
//!   tables, so sweeps reproduce from a seed.
//!
//! All values are immutable after construction and every operation is pure,
//! so instances can be shared across threads and sweeps partitioned freely.

pub mod antichain;
pub mod blockers;
pub mod bridge;
pub mod clutter;
pub mod gen;
pub mod label;
pub mod maps;
pub mod poset;
pub mod report;

pub use antichain::Antichain;
pub use blockers::AtomSubset;
pub use bridge::{BooleanLattice, BridgeError};
pub use clutter::{Clutter, ClutterError, ClutterKind, GroundSet};
pub use label::Label;
pub use maps::{MapError, MapTable, SweepConfig, SweepSummary};
pub use poset::{Poset, PosetError};
pub use report::{ReportStatus, VerificationReport};
