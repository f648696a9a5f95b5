//! Real matrix realizations of classical Lie algebras and symmetric pairs.

mod algebra;
pub mod families;
mod involution;
mod pair;
mod sparse;

pub use algebra::{EntryMap, MatrixConditions, MatrixLieAlgebra, SparseVec};
pub use involution::{fixed_subalgebra, InvolutionMap};
pub use pair::{
    isotropy_is_unimodular, rank_of_compact_subalgebra, HomogeneousPair, HyperbolicSearch, RootDecomposition, RootSpace, Sampling,
    SymmetricPairRealization,
};
pub use families::PairKind;
pub use sparse::{SignedPerm, SparseMat};
