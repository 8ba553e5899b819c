//! A matroid computation toolkit.
//!
//! Matroids are represented canonically by a labeled ground set and the set
//! of bases; the rank oracle and all derived structure (closure, circuits,
//! flats, connectivity) reduce to it. On top of the classical operation
//! algebra (minors, duals, sums, relabelings, isomorphism) the crate
//! provides:
//!
//! - extension operators: principal/free extension, placement in a span,
//!   series extension, the element shift, and freeness comparisons;
//! - local connectivity, 3-separation predicates, and pinned extensions
//!   into a 3-separation with a uniqueness verifier;
//! - a two-phase construction that glues a matroid with a distinguished
//!   element pair onto a matroid partitioned into two bases, together with
//!   brute-force verifiers for its structural properties;
//! - a finite-field representability searcher for desk-scale ground sets;
//! - sound (incomplete) gammoid certification by free deconstruction.
//!
//! Everything is a pure function on immutable values; ground sets are
//! capped (24 by default) so exhaustive subset scans stay tractable.

pub mod axioms;
pub mod catalog;
pub mod connect;
pub mod construct;
pub mod error;
pub mod extend;
pub mod gammoid;
pub mod io;
pub mod iso;
pub mod matroid;
pub mod rep;
pub mod subset;

pub use error::{Error, Result};
pub use matroid::{Matroid, RankTable};
pub use subset::Subset;
