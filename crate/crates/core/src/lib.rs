//! Exact algorithms for ordering half-open intervals so that the summed cost
//! of their exposed parts is minimal.
//!
//! Given intervals `I_1, ..., I_n` (each `[a, b)` with rational endpoints) and
//! a cost function `f`, an ordering exposes, for every interval, the portion
//! not covered by intervals placed earlier; the objective is the sum of
//! `f(length of exposed part)` over all intervals.
//!
//! The crate provides:
//!
//! * exact rational interval geometry ([`geometry`]),
//! * problem instances, cost functions and structural classification
//!   ([`instance`]),
//! * the covered-interval table ([`covered`]),
//! * interchangeable exposed-part enumerators ([`exposed`]),
//! * the covered-interval dynamic program plus brute-force and subset-DP
//!   oracles ([`solver`]),
//! * instance generators for hardness constructions and random families
//!   ([`generators`]).
//!
//! Everything is deterministic: all randomness is seeded, all tie-breaking
//! rules are fixed, and all arithmetic is exact rational (square roots and
//! fractional powers of two are rounded once, to 96 fractional bits, and then
//! handled exactly).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod perm;
mod scene;
mod sweep;

pub mod covered;
pub mod exposed;
pub mod generators;
pub mod geometry;
pub mod instance;
pub mod solver;

pub use error::Error;
pub use geometry::{DisjointUnion, Interval, Rat};
pub use instance::{Cost, CostBackend, CostFunction, CostKind, FunctionClass, Instance, Ordering};
pub use solver::{Algorithm, Solution};
