//! Signatures of cocompact Fuchsian groups and exact Riemann–Hurwitz
//! arithmetic.

mod rational;
mod signature;
pub mod snf;
mod subgroups;

pub use rational::Rational;
pub use signature::{euler_characteristic, Signature, MAX_PERIOD};
pub use subgroups::{
    abelianization, enumerate_subgroup_signatures, relation_matrix, subgroup_index, subgroup_signature,
    surface_genus_from_order, triangle_subgroup_candidates, Abelianization, MAX_ORDER,
};
