//! Exact linear algebra over GF(2) on bit-packed vectors.
//!
//! Columns are assembled sparsely ([`SparseColumnSet`]) and reduced into an
//! [`EchelonBasis`] whose stored vectors each own a distinct pivot, the
//! lowest set bit. Combination records let every stored vector be written as
//! a sum of original columns, which is what [`solve`] and
//! [`nullspace_basis`] return.

mod bitvec;
mod echelon;
mod rank;
mod sparse;

pub use bitvec::BitVector;
pub use echelon::{nullspace_basis, solve, solve_with, EchelonBasis, Insertion};
pub use rank::{projected_memory, rank, rank_with_limit, RankStats, DEFAULT_MEMORY_CAP};
pub use sparse::SparseColumnSet;
