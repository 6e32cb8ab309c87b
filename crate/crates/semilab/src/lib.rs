//! Computational toolkit for finite semigroups given by Cayley tables,
//! centered on the starred and tilde generalizations of Green's relations.
//!
//! The crate computes the classic, starred, and tilde Green partitions,
//! classifies tables against a hierarchy of abundance and amiability
//! properties, searches for embedded copies of small fixed patterns
//! (notably the four-element semigroup M that separates amiability from
//! adequacy), models the free idempotent-generated-by-two-letters
//! semigroup through alternating-word normal forms and an integer matrix
//! representation, and exhaustively enumerates semigroups of small order
//! to re-verify the structural claims the classifier relies on.
//!
//! Modules:
//!
//! * [`cayley`]: tables, validation, canonical forms, isomorphism search.
//! * [`sgt`]: the plain-text `.sgt` table format.
//! * [`green`]: the six Green partitions and the amiability maps.
//! * [`classify`](mod@classify): the flag hierarchy, witnesses,
//!   quasi-identities.
//! * [`pattern`]: embedding search and the M-specific fast paths.
//! * [`fword`]: normal forms and matrices for the infinite model F.
//! * [`census`]: exhaustive enumeration and the verification suites.

pub mod cayley;
pub mod census;
pub mod classify;
pub mod fword;
pub mod green;
pub mod pattern;
pub mod sgt;

pub use cayley::{CayleyTable, ElementSet, ValidateError};
pub use census::{run_census, CensusResult, CensusSpec, DedupMode, FilterExpr};
pub use classify::{classify, ClassificationReport, Flag, Flags};
pub use fword::{FWord, Letter, Mat2};
pub use green::{GreenProfile, NotAmiable, Partition};
pub use pattern::{find_embedding, find_m, EmbeddingWitness};
