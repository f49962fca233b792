//! Permutation-group engine, constructors for the linear, symmetric and
//! sporadic groups used in surface-action classification, exact signature
//! calculus for Fuchsian groups, and generating-tuple searches.

pub mod episearch;
pub mod error;
pub mod fuchsian;
pub mod perm;
pub mod zoo;

pub use error::{Error, Result};
pub use perm::{GroupHandle, GroupMetadata, Permutation};
