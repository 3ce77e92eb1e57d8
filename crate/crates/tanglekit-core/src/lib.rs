//! Core engine for computational low-dimensional topology at desk scale.
//!
//! The crate is organised around three layers:
//!
//! * **Braids** — exact words in Artin braid groups with a Garside
//!   normal form solving the word problem ([`braid`]), plus reduced words
//!   in the rank-2 free group ([`freeword`]) and Grothendieck–Teichmüller
//!   candidate pairs acting on braids ([`gt`]).
//! * **Tangles** — oriented tangle diagrams built from cap/braid/cup
//!   symbols ([`tangle`]), local rewriting moves with a budgeted
//!   equivalence search ([`moves`]), and polynomial invariants serving as
//!   an independent oracle ([`invariants`]).
//! * **Knots** — the action of Grothendieck–Teichmüller pairs on knots,
//!   knot fractions, two-bridge forms, and framed twists ([`action`]).
//!
//! The crate is `no_std` + `alloc`; everything is an immutable value and
//! every operation is a pure function.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod action;
pub mod braid;
pub mod error;
pub mod freeword;
pub mod gt;
pub mod invariants;
pub mod moves;
pub mod tangle;

pub use error::Error;
