//! Class data and the π-class invariants `k_π`, `d_π` and `d`.

mod classes;
mod pi;
mod rational;

pub use classes::{
    class_number, commuting_degree, conjugacy_classes, d_pi, d_pregular_psl2_even, k_pi,
    k_pregular_psl2_even, ClassEntry, ClassTable,
};
pub use pi::{pi_part, PiMode, PiSet};
pub use rational::{
    decimal5, parse_fraction, ratio, ratio_big, to_decimal, to_fraction_string, Rational,
};
