//! Exact computations for the hit problem over F2.
//!
//! The polynomial algebra `F2[x1, ..., xk]` is graded by degree and carries an
//! action of the Steenrod squares `Sq^i`. A homogeneous polynomial is *hit* when
//! it is a sum of images `Sq^i(g)` with `i > 0`. Everything here reduces that
//! question to rank and solve problems for bit-packed GF(2) matrices:
//!
//! - [`steenrod`]: monomials, polynomials, `Sq^i` (two independent evaluators),
//!   and the arithmetic functions `alpha`, `mu` and weight vectors.
//! - [`basis`]: the monomial basis of a degree slice and the coordinate map.
//! - [`gf2`]: bit vectors, sparse column sets, echelon bases, rank, solve and
//!   nullspace.
//! - [`hitspace`]: generator tasks, hit matrices, hit decisions with
//!   certificates and the dimensions of the hit space and of `QP_k`.
//! - [`oracle`]: a slow brute-force reference used to cross-check the engines.

pub mod basis;
pub mod error;
pub mod gf2;
pub mod hitspace;
pub mod oracle;
pub mod steenrod;

pub use basis::{basis_dimension, enumerate_basis, DegreeBasis};
pub use error::{Error, Result};
pub use gf2::{BitVector, EchelonBasis, SparseColumnSet};
pub use hitspace::{
    build_hit_matrix, decide_hit, enumerate_tasks, hit_dimension, kameko_reduces,
    nonuniqueness_witness, quotient_dimension, wood_vanishes, Decomposition, GeneratorTask,
    HitConfig, HitMatrix, HitResult,
};
pub use steenrod::{
    alpha, binom_mod2, mu, sq_poly, sq_recursive, sq_total_square, weight_vector, Monomial, PolyF2,
    SqContext, WeightVector,
};
