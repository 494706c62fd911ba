//! Union lattices of finite set families: enumeration of their equivalence
//! classes, realization by explicit witnesses, and exact bigraded
//! cohomology of the associated Taylor cochain complexes.
//!
//! Given `k` sets `X_1, …, X_k`, none contained in another, the equality
//! pattern of the unions `M_S = ⋃_{i∈S} X_i` over subsets `S ⊆ [k]` is a
//! *configuration*: an equivalence relation on the size-≥2 subsets closed
//! under adjoining a common index to both sides. This crate
//!
//! * enumerates configuration classes up to index relabeling by two
//!   independent algorithms ([`enumerate`]),
//! * decides realizability and synthesizes minimal witness families by
//!   sweeping Venn-cell selections ([`realize`]), with a bundled corpus of
//!   published witnesses ([`corpus`]),
//! * builds the Taylor cochain complex of a family read as square-free
//!   monomial generators and computes its exact bigraded cohomology ranks
//!   over Q and F2 ([`taylor`]).
//!
//! The `latenum` binary exposes all of it; see the crate README.

pub mod canon;
pub mod cli;
pub mod corpus;
pub mod enumerate;
mod error;
pub mod family;
pub mod lattice;
pub mod linalg;
pub mod realize;
pub mod subset;
pub mod taylor;

pub use canon::{are_equivalent, canonical_form, canonical_key, CanonicalKey, IndexPermutation};
pub use error::{Error, Result};
pub use family::{ElemMask, SetFamily};
pub use lattice::{
    closure, config_from_family, config_from_relations, is_valid_configuration, parse_relations,
    Configuration, CoverPair,
};
pub use subset::{parse_subset, subset_domain, GroundSize, SubsetDomain, SubsetMask};
