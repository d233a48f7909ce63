#![forbid(unsafe_code)]

//! Exact, finite verification for the combinatorics of compactified spin
//! moduli spaces: enumeration of stable dual graphs and boundary divisor
//! types, theta-characteristic counts via Arf invariants, rational
//! Euler-characteristic ledgers, vanishing/base-case planning for the
//! inductive cohomology argument, and machine-checked replays of the
//! independence and kernel computations.
//!
//! Everything here is deterministic and uses exact rational arithmetic;
//! there is no floating point anywhere in the crate.

pub mod arf;
pub mod euler;
pub mod graphs;
pub mod induction;
pub mod relations;
pub mod spin;
pub mod verify;

pub use euler::Rational;
