//! Closed-form arithmetic for finite groups of Lie type: cyclotomic values,
//! orders, class numbers, tori, and grid checks of the witness inequalities.

mod branches;
mod cyclo;
mod family;
mod tables;
mod witness;

pub use branches::{verify_alternating_inequalities, verify_branch_inequalities};
pub use cyclo::{cyclo, semicyclo, SemiSign};
pub use family::LieFamily;
pub use tables::{four_prime_table, prime_power_k_search, FourPrimeRow};
pub use witness::{
    odd_prime_powers, tori_grid, unipotent_grid, unipotent_z, verify_torus_witness,
    verify_unipotent_witness,
};

#[cfg(test)]
mod tests;
