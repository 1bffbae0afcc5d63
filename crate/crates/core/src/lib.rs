//! Exact tropical Stiefel map and the combinatorics around it.
//!
//! Everything here works over exact rationals in the min-plus semiring
//! (`⊕ = min`, `⊙ = +`, `∞` as the additive identity):
//!
//! * [`trop`]: scalars, vectors and matrices over the tropical semiring,
//!   tropical vector-matrix products and residuation.
//! * [`geom`]: exact linear programming and small polyhedral computations.
//! * [`bipartite`]: bipartite graphs, optimal matchings, matching multifields,
//!   support sets and transversal matroids.
//! * [`plucker`]: tropical Plücker vectors, the Stiefel map, duality, stable
//!   intersection/union, cocircuits and matrix recovery.
//! * [`arrangement`]: covectors of tropical hyperplane arrangements.
//! * [`subdivision`]: regular matroid subdivisions and their facets.
//! * [`linspace`]: membership, decomposition and the bounded part of
//!   Stiefel tropical linear spaces.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// index loops read closer to the matrix formulas
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arrangement;
pub mod bipartite;
mod error;
pub mod geom;
pub mod linspace;
pub mod plucker;
pub mod subdivision;
mod subset;
pub mod trop;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use subset::{subsets_of_size, IndexSet};

/// Exact rational numbers used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Default cap on the number of elementary steps of enumerations.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Largest ground set for which matroids are enumerated basis by basis.
pub const MAX_GROUND_SET: usize = 12;

/// Builds a rational from an integer.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Builds the rational `num/den`.
///
/// # Panics
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
