//! Doubling finite groups into loops.
//!
//! Given a finite group `G`, each of the four quarters of the multiplication
//! table on `G ∪ Ḡ` is filled by one of eight pair operations
//! `(x, y) ↦ (x^i y^j)^k`. This crate builds all 4096 resulting magmas,
//! decides which are loops, Moufang loops, Bol loops and groups, and sorts
//! the nonassociative Moufang loops into (anti)isomorphism classes.
//!
//! The runnable programs under `examples/` walk through each capability;
//! the `chein` binary exposes the same operations on the command line.

pub mod analysis;
pub mod classifier;
pub mod cli;
pub mod double;
pub mod error;
pub mod group;
pub mod identity;
pub mod morphisms;
pub mod pair_ops;
pub mod table;

pub use analysis::{analyze, diass_triples, lemma1_gate, PropertyReport};
pub use classifier::{enumerate, search_bol_not_moufang, verify_theorem6, ClassificationReport};

pub use double::{build_double, chein, DoubledMagma};
pub use error::{Error, Result};
pub use group::{build_group, validate_group, Group, GroupSpec};
pub use identity::{builtin, check_identity, parse_identity, CheckOutcome, Identity};
pub use morphisms::{
    are_anti_isomorphic, are_isomorphic, lemma5_map, verify_homomorphism, ElementMap,
};
pub use pair_ops::{named_matrix, opposite_matrix, t_transform, NamedMatrix, OpMatrix, PairOp};
pub use table::CayleyTable;
