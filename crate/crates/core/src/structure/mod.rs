//! Cores, the upper p-series, chief series and related structure.

mod cores;
mod lattice;
mod series;

pub use cores::{
    p_core, p_core_with, p_prime_core, p_prime_core_with, relative_core, CoreKind, Tier,
};
pub use lattice::{
    center, chief_factors, chief_series, class_closures, count_nonabelian_pprime_simple_factors,
    derived_series, derived_subgroup, is_simple, is_solvable, minimal_normal_subgroups,
    normal_subgroups, ChiefFactor,
};
pub use series::{
    has_normal_sylow, is_p_solvable, p_length, upper_p_series, upper_p_series_with, PSeries,
    PSeriesSummary,
};

#[cfg(test)]
mod tests;
