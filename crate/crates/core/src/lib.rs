//! Exact Z_k group connectivity, nowhere-zero flows and Z_3-contraction for
//! small multigraphs, together with the exceptional-graph catalog for
//! 3-edge-connected graphs of independence number at most two.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`], [`graph6`], [`canon`], [`family`], [`census`]: multigraph
//!   storage, interchange, canonical forms, standard families and exhaustive
//!   small-graph enumeration.
//! * [`flow`]: exact deciders for boundaries of nowhere-zero assignments.
//! * [`reduction`]: contraction of Z_3-connected subgraphs, lifting, and
//!   triangular-connectivity tools.
//! * [`catalog`]: the 18 exceptional graphs and their derivation.
//! * [`classifier`]: the trichotomy and the nowhere-zero 3-flow predicate.

pub mod canon;
pub mod catalog;
pub mod census;
pub mod classifier;
pub mod family;
pub mod flow;
pub mod graph;
pub mod graph6;
pub mod reduction;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use catalog::{Catalog, CatalogEntry};
pub use census::{enumerate_census, CensusConstraints, CensusGraph};
pub use classifier::{classify, predict_nz3, Outcome, Verdict};
pub use family::{gen_family, FamilySpec};
pub use flow::{
    AchievableSet, BoundaryDemand, Engine, FlowAssignment, Oracle, Orientation,
};
pub use graph::{Contraction, GraphError, MultiGraph, INFINITE_CONNECTIVITY};
pub use graph6::{decode_graph6, encode_graph6};
pub use reduction::{ReductionStep, ReductionTrace};
