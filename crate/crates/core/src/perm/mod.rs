//! Exact permutation-group engine.

mod chain;
mod classes;
mod group;
mod permutation;
mod subgroups;

pub use chain::{Closure, Elements, StabChain};
pub use classes::{center_order, conjugacy_class_of, conjugacy_classes, ConjugacyClass};
pub(crate) use classes::partition_into_classes;
pub use group::{GroupHandle, GroupMetadata, DEFAULT_ENUMERATION_CAP};
pub use permutation::{Permutation, Point, MAX_DEGREE};
pub(crate) use permutation::{checked_lcm, gcd, prime_factors};
pub use subgroups::{coset_action, derived_subgroup, is_perfect, normal_closure, CosetAction};
