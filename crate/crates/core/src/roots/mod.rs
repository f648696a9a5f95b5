//! Abstract restricted root systems with two-sided multiplicities,
//! signatures, half-signatures and ε-families.

pub mod cartan;
mod data;
mod signature;

pub use data::{FamilyMember, Multiplicity, RestrictedRootData, RootProfile, DEFAULT_FAMILY_RANK_BOUND};
pub use signature::{HalfSignature, Signature, Unit4};

#[cfg(test)]
mod tests;
