//! Finite Gr-categories, their reduced types `(Π, A, ξ)`, Gr-functors and
//! the realization of abstract group kernels by group extensions.
//!
//! Everything here is exact and finite: groups are multiplication tables,
//! modules are finite abelian groups with a table of actions, and cochains
//! are stored as plain coordinate vectors.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod functor;
pub mod gr;
pub mod linalg;

pub use error::{Error, Result};
