//! Amoeba membership, order maps, complement censuses, Ronkin pieces and spines.

pub mod census;
pub mod logconst;
pub mod membership;
pub mod ronkin;
pub mod spine;
pub(crate) mod torus;

pub use census::{classify_grid, component_census, default_radius, AmoebaGrid, CellState, Census, Component, GridParams, Verdict};
pub use logconst::{LogConstant, LogValue};
pub use membership::{membership, order_map, Certificate, Membership, MembershipParams};
pub use ronkin::{ronkin_pieces, vertex_pieces, RonkinPiece};
pub use spine::{spine, DualCell, SpineCell, SpineComplex};
