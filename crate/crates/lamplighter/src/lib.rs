//! Exact and Monte Carlo computation of the von Neumann kernel dimension of
//! switch-walk-switch lamplighter adjacency operators.
//!
//! The kernel dimension of the lamplighter operator of order m on a group
//! reduces to percolation with parameter p = 1/m on the group's Cayley graph:
//! it equals the expected nullity-per-vertex of the percolation cluster at
//! the identity. On the free group (a regular tree) this has an algebraic
//! closed form, evaluated and certified exactly here; the Monte Carlo
//! estimators provide an independent statistical check, and the Z6 * Z6 free
//! product is handled by sampling with exact per-sample oracles.

pub mod algebraic;
pub mod animals;
pub mod bigfloat;
pub mod error;
pub mod matchings;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
pub use poly::Rat;
