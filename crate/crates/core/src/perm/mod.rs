//! Permutations, stabilizer chains and permutation groups.

mod group;
mod io;
mod permutation;
mod sgs;

pub use group::{
    join, normal_closure, normal_closure_over, quotient, quotient_map, Elements, Enumerator,
    GroupHandle, Limits, Quotient,
};
pub use io::{parse_cycles, parse_generator_file, read_generator_file, write_generator_file};
pub use permutation::{compose, Permutation};
pub use sgs::StrongGenSet;
