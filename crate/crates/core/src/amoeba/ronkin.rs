//! Affine pieces `log |c_nu| + <t, nu>` of the Ronkin function on vertex
//! components of the amoeba complement.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::census::Census;
use super::logconst::LogConstant;
use crate::algebra::poly::rat_to_f64;
use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::geometry::newton_polytope;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RonkinPiece {
    pub nu: Vec<i64>,
    /// `log |c_nu|` in floating point.
    pub log_abs: f64,
    /// Exact value when `|c_nu| = 2^a 3^b`.
    pub exact: Option<LogConstant>,
}

impl RonkinPiece {
    pub fn for_vertex(f: &MultiPoly, nu: &[i64]) -> Result<Self> {
        let e: Vec<i32> = nu.iter().map(|&v| v as i32).collect();
        let c = f.coeff(&e);
        if c.is_zero() {
            return Err(Error::Invalid(format!("{:?} is not in the support", nu)));
        }
        Ok(RonkinPiece {
            nu: nu.to_vec(),
            log_abs: rat_to_f64(&c).abs().ln(),
            exact: LogConstant::from_rat(&c),
        })
    }

    pub fn eval(&self, t: &[f64]) -> f64 {
        self.log_abs + self.nu.iter().zip(t).map(|(a, b)| *a as f64 * b).sum::<f64>()
    }
}

/// One piece per census component whose order is a vertex of the Newton
/// polytope, plus warnings for the excluded components.
pub fn ronkin_pieces(f: &MultiPoly, census: &Census) -> Result<(Vec<RonkinPiece>, Vec<String>)> {
    let mut pieces = Vec::new();
    let mut warnings = Vec::new();
    for c in &census.components {
        if !c.is_vertex {
            warnings.push(format!(
                "component of order {:?} is not a vertex; the Ronkin function has no closed affine form there",
                c.order
            ));
            continue;
        }
        pieces.push(RonkinPiece::for_vertex(f, &c.order)?);
    }
    Ok((pieces, warnings))
}

/// Pieces at every vertex of the Newton polytope, without a census.
pub fn vertex_pieces(f: &MultiPoly) -> Result<Vec<RonkinPiece>> {
    let np = newton_polytope(f)?;
    np.vertices().iter().map(|v| RonkinPiece::for_vertex(f, v)).collect()
}
