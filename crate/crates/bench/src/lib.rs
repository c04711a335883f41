//! Shared fixtures for the benchmarks.

use pregular_core::construct::GroupSpec;
use pregular_core::GroupHandle;

/// Groups of increasing size used across benchmarks.
pub fn fixtures() -> Vec<GroupSpec> {
    use GroupSpec::*;
    vec![
        Symmetric(5),
        Psl { n: 2, q: 17 },
        Mathieu(11),
        Psp4(3),
        Mathieu(12),
    ]
}

/// A fresh handle, so no cached stabilizer chain or class table is reused.
pub fn fresh(spec: &GroupSpec) -> GroupHandle {
    spec.build().expect("fixture builds")
}
