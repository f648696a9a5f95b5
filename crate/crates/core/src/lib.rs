//! Exact sufficient conditions for the nonexistence of compact
//! Clifford–Klein forms of reductive homogeneous spaces `G/H`.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rationals, matrices, canonical subspaces, polynomials;
//! * [`lie`]: real matrix Lie algebras, involutions, symmetric pairs and
//!   their restricted root decompositions;
//! * [`roots`]: abstract restricted root data, signatures, half-signatures
//!   and ε-families;
//! * [`invariant`]: invariant polynomial algebras presented on tori and the
//!   commuting-diagram check;
//! * [`obstruction`]: the individual criteria and the `decide` aggregator;
//! * [`catalog`]: the shipped classification tables and their loader.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod invariant;
pub mod lie;
pub mod obstruction;
pub mod roots;

pub use error::{CkfError, Result};
