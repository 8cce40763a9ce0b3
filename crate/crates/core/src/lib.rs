//! Combinatorial orbispace computations.
//!
//! A finite simplicial cell complex together with a finite group acting
//! without inversion, or more generally a complex of groups over such a
//! complex, presents an orbispace at desk scale. This crate computes the
//! invariants that are decidable (or semi-decidable with certificates) in
//! that presentation:
//!
//! * the fundamental group as a finite presentation, with coset
//!   enumeration, abelian invariants and word verdicts ([`pi1`], [`groups`]);
//! * the complex of groups associated to a group action, orbifold Euler
//!   characteristics by both the commuting-pair and the twisted-sector
//!   formula, and the table of twisted sectors ([`quotient`]);
//! * developability verdicts and finite-index coverings together with the
//!   deck-transformation exact sequence check ([`covering`]).
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate. Every operation is deterministic: iteration orders are fixed by
//! canonical sorting, never by hash order.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod budget;
pub mod cog;
pub mod covering;
pub mod groups;
pub mod pi1;
pub mod quotient;
pub mod scwol;

pub use budget::Budget;
