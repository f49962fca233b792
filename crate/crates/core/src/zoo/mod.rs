//! Constructors for the groups the searches run on.

pub mod field;
mod file;
mod linear;
mod spec;
mod standard;

pub use field::{prime_power, FiniteField};
pub use file::{load_group, parse_generator_file, GeneratorFile};
pub use linear::{make_pgl2, make_psl2, mobius, psl2_over};
pub use spec::GroupSpec;
pub use standard::{direct_product, make_standard, StandardFamily};
