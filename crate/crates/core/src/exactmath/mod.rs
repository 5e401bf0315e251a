//! Exact rational scalars, univariate polynomials, matrices, characteristic
//! polynomials, Sturm-sequence root isolation, and recurrence checks.

mod matrix;
mod poly;
mod rat;
mod recurrence;
mod sturm;
pub(crate) mod zpoly;

pub use matrix::{charpoly, power_entry_sequence, RatMatrix};
pub use poly::UniPoly;
pub use rat::{rat, rat_from_str, rat_to_string, Rat};
pub use recurrence::{check_recursion, generating_denominator};
pub use sturm::{count_real_roots_in, largest_real_root, real_root_count, RootInterval};
