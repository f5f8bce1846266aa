//! Polynomial arithmetic over F2 and the action of the Steenrod squares.

mod arith;
mod poly;
mod sq;

pub use arith::{alpha, binom_mod2, mu, weight_vector, WeightVector};
pub use poly::{Monomial, PolyF2, MAX_EXPONENT};
pub use sq::{sq_poly, sq_recursive, sq_total_square, SqContext, DEFAULT_CACHE_ENTRIES};
