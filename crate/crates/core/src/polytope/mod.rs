//! Polyhedral side: constraint systems for the bases and independence
//! polytopes, separation, and an exact hull lab used to verify them.
//!
//! Everything is exact. Constraints carry integer coefficients; points carry
//! rational coordinates.

mod constraint;
mod dd;
mod hull;
mod lab;
mod linalg;
mod separation;
mod systems;

pub use constraint::{
    ConstraintKind, ConstraintSystem, LinearConstraint, NormalRow, NormalizedSystem, RationalPoint, ScaledPoint, Sense,
};
pub use hull::{brute_force_facets, brute_force_facets_capped, enumerate_vertices, enumerate_vertices_capped};
pub use lab::{
    basis_points, classify_facet, facet_check, independent_points, is_facet, minimize_against, minimize_system,
    DropReason, Dropped, FacetCheck, Minimized,
};
pub use separation::{separate, SeparationOracle, SeparationOutcome, Verdict};
pub use systems::{
    check_facet_preconditions, coparallel_closures, edmonds_full_system, facet_system, parallel_closures,
    q_facet_system,
};
