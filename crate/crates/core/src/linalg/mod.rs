//! Exact integer linear algebra: Smith normal form over arbitrary-precision
//! integers and echelon bases for subgroups of finite abelian groups.

mod lattice;
mod snf;

pub use lattice::EchelonLattice;
pub use snf::{kernel, smith, solve, IntMatrix, Smith};
pub(crate) use snf::{smith_tracking, Track};
