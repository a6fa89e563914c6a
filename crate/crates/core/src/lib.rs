//! Combinatorics of simplicial sets with exact arithmetic.
//!
//! The crate is organized around five layers:
//!
//! * [`delta`] — arrows of the simplicial category and its opposite as
//!   explicit value tables, with composition, normal forms and decision
//!   procedures for equality of composites.
//! * [`sset`] — truncated simplicial and multisimplicial sets as index-based
//!   providers (explicit tables, products, diagonals, slices), plus Segal
//!   maps and exact Segal-condition checks.
//! * [`cat`] — finite categories, monoids, functors and natural
//!   transformations given by composition tables; the nerve; and the
//!   correspondence between natural transformations and cylinder functors.
//! * [`bar`] — the n-fold reduced bar construction of a monoid and the
//!   multiplication extracted from a Segal simplicial set.
//! * [`homology`] — normalized integer chains and homology groups through a
//!   sparse Smith normal form.

pub mod bar;
pub mod cat;
pub mod delta;
pub mod homology;
pub mod sset;
