//! Set arithmetic in finite abelian groups.
//!
//! The crate provides sumsets, periods (stabilizers) and quotients over small
//! finite abelian groups, the calculus of *trios* (triples of non-empty sets
//! whose sumset misses an element), the `n`-transform on set systems, and an
//! exhaustive / randomized scan engine that checks Kneser's theorem, its
//! symmetric trio form and the supporting lemmas, reporting witnesses for any
//! violation.

pub mod cli;
pub mod error;
pub mod group;
pub mod setops;
pub mod subset;
pub mod transform;
pub mod trio;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Group, QuotientView, Realization, Subgroup};
pub use setops::ComplementIdentity;
pub use subset::Subset;
pub use transform::{SetSystem, StopCertificate, TransformOutcome};
pub use trio::{Trio, TrioStats};
