//! Integer cones, lattice polytopes and fans in dimension at most three.

pub mod cone;
pub mod fan;
pub mod fm;
pub mod linalg;
pub mod polytope;

pub use cone::{dual_cone, recession_cone, Inequality, IntCone, Sense};
pub use fan::{fan_check, normal_fan, Fan, FanVerdict, FanWitness};
pub use polytope::{newton_polytope, LatticePolytope};
