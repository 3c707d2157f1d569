//! Matroid analysis toolkit.
//!
//! The crate is organised bottom-up:
//!
//! * [`matroid`] holds the concrete representations and the rank machinery
//!   (duality, closure, minors, bases, circuits).
//! * [`connectivity`] decides nonseparability and splits a matroid into its
//!   connected components.
//! * [`locked`] recognises and enumerates locked subsets and answers the
//!   k-locked question.
//! * [`constructions`] builds sums, extensions, relaxations and the named
//!   catalog, and searches for isomorphisms and minors.
//! * [`polytope`] produces inequality systems for the bases and independence
//!   polytopes and checks them with exact polyhedral computation.
//! * [`mwbp`] solves the maximum-weight basis problem three independent ways.
//! * [`certify`] bundles the end-to-end checks run by the acceptance suite and
//!   by `mxt selftest`.

pub mod certify;
pub mod connectivity;
pub mod constructions;
pub mod error;
pub mod locked;
pub mod matroid;
pub mod mwbp;
pub mod polytope;
pub mod rational;
pub mod subset;

pub use error::{Error, Result};
pub use matroid::{Caps, Matroid};
pub use rational::Rational;
pub use subset::Subset;
