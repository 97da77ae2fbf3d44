//! Supports of series solutions, the cones `K_I`, `C_I` and the fan of a
//! Horn system.

pub mod admissible;
pub mod cones;
pub mod spec;

pub use admissible::{admissible_supports, recheck_support, DEFAULT_WINDOW};
pub use cones::{gamma_i, horn_fan, k_i, nongeneric_incidences, two_sided_abel_bounds, HornFan};
pub use spec::SupportSpec;
