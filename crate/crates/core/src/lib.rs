//! Permutation-group engine for p-regular class counts and the structural
//! properties tied to them.

pub mod arith;
pub mod construct;
pub mod criteria;
pub mod error;
pub mod finfield;
pub mod invariants;
pub mod lietype;
pub mod perm;
pub mod structure;

pub use error::{Error, Result};
pub use invariants::{ClassTable, PiSet, Rational};
pub use perm::{GroupHandle, Limits, Permutation, StrongGenSet};
