//! Finite groups, automorphisms, finite abelian groups and `Π`-modules.

mod abelian;
mod automorphism;
mod group;
mod module;

pub use abelian::{decompose, Decomposition, FiniteAbelianGroup};
pub use automorphism::{
    automorphism_group, automorphism_group_brute_force, center, inner_automorphisms,
    outer_quotient, AutGroup, AutStructure, Center, InnerAutomorphisms, OuterQuotient,
    MAX_AUT_ORDER, MAX_GROUP_ORDER,
};
pub use group::{
    automorphism_maps_brute_force, find_isomorphism, homomorphisms, FiniteGroup, GroupHom,
};
pub use module::{AdditiveMap, PiModule};
