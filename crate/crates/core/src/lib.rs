//! Horn hypergeometric systems from Ore-Sato coefficients, their supports
//! and fans, symbol resultants, and amoeba complement censuses.
//!
//! All symbolic work is exact over the rationals. Numerical work (series
//! partial sums, amoeba grids) is confined to [`horn::series`] and
//! [`amoeba`].

pub mod algebra;
pub mod amoeba;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod horn;
pub mod ser;
pub mod supports;

pub use error::{Error, Result};

/// Arbitrary-precision rational used throughout.
pub type Rat = num_rational::BigRational;
