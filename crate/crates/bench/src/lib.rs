//! Fixtures shared by the benchmarks.

use tql_core::zoo::GroupSpec;
use tql_core::GroupHandle;

pub fn group(spec: &str) -> GroupHandle {
    spec.parse::<GroupSpec>().and_then(|s| s.build()).expect("benchmark group spec")
}
