//! Exact Laurent-polynomial arithmetic, Euler operators and resultants.

pub mod operator;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod resultant;

pub use operator::{theta_apply, OperatorPoly};
pub use parse::{parse_default, parse_poly, parse_rat};
pub use poly::{poly_arithmetic, rat, ratio, ArithOp, Monomial, MultiPoly};
pub use rational::RationalFn;
pub use resultant::{discriminant, essential_resultant, univariate_resultant};
