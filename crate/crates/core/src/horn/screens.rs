//! Cheap obstructions to a hypergeometric series summing to a rational
//! function.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coefficient::{nonconfluency_check, OreSatoCoefficient};
use super::system::horn_from_ore_sato;
use crate::error::{Error, Result};
use crate::geometry::linalg::rank_i64;
use crate::supports::{admissible_supports, horn_fan, DEFAULT_WINDOW};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RankVerdict {
    /// Denominators are not `prod Gamma(p_j (s_j + 1))` or some numerator
    /// row has a nonpositive entry.
    NotApplicable { reason: String },
    CannotBeRational { rank: usize },
    /// Any rational sum is contiguous to the Bergman kernel `K_p`.
    ContiguousToBergman { p: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScreenReport {
    pub rank_a: usize,
    pub rank_verdict: RankVerdict,
    /// Irreducible supports in `Z^n` lying in strongly convex cones.
    pub admissible_count: usize,
    pub fan_cones: usize,
    /// Fewer admissible supports than maximal fan cones.
    pub too_few_supports: bool,
    pub messages: Vec<String>,
}

/// `p_j` when the denominators are exactly `Gamma(p_j (s_j + 1))`, one per coordinate.
fn bergman_denominators(phi: &OreSatoCoefficient) -> Option<Vec<i64>> {
    let n = phi.n;
    if phi.den_rows.len() != n || !phi.linear_factors.is_empty() {
        return None;
    }
    let mut p = vec![0i64; n];
    for r in &phi.den_rows {
        let nz: Vec<usize> = (0..n).filter(|&j| r.a[j] != 0).collect();
        if nz.len() != 1 {
            return None;
        }
        let j = nz[0];
        let pj = r.a[j];
        if pj <= 0 || p[j] != 0 || r.c != Rat::from_integer((-pj).into()) {
            return None;
        }
        p[j] = pj;
    }
    Some(p)
}

pub fn rationality_screens(phi: &OreSatoCoefficient) -> Result<ScreenReport> {
    phi.validate()?;
    if !nonconfluency_check(phi) {
        return Err(Error::Invalid("rationality screens need a nonconfluent coefficient".into()));
    }
    let n = phi.n;
    let a: Vec<Vec<i64>> = phi.num_rows.iter().map(|r| r.a.clone()).collect();
    let rank_a = rank_i64(&a, n);
    let mut messages = Vec::new();
    let rank_verdict = match bergman_denominators(phi) {
        None => RankVerdict::NotApplicable {
            reason: "denominators are not of the form prod Gamma(p_j (s_j + 1))".into(),
        },
        Some(_) if a.iter().any(|r| r.iter().any(|&x| x <= 0)) => RankVerdict::NotApplicable {
            reason: "some numerator row has a nonpositive entry".into(),
        },
        Some(_) if rank_a > 1 => {
            messages.push(format!("rank A = {} > 1: the series cannot define a rational function", rank_a));
            RankVerdict::CannotBeRational { rank: rank_a }
        }
        Some(p) => {
            messages.push(format!(
                "rank A = 1: a rational sum would be contiguous to the Bergman kernel K_{:?}",
                p
            ));
            RankVerdict::ContiguousToBergman { p }
        }
    };
    let system = horn_from_ore_sato(phi)?;
    let supports = admissible_supports(&system, &vec![Rat::zero(); n], DEFAULT_WINDOW)?;
    let admissible_count = supports.iter().filter(|s| s.is_strongly_convex()).count();
    let fan = horn_fan(phi)?;
    let fan_cones = fan.b_cones.len();
    let too_few_supports = admissible_count < fan_cones;
    if too_few_supports {
        messages.push(format!(
            "{} admissible supports in Z^n < {} maximal fan cones: a rational solution would need more Laurent expansions than exist",
            admissible_count, fan_cones
        ));
    }
    Ok(ScreenReport {
        rank_a,
        rank_verdict,
        admissible_count,
        fan_cones,
        too_few_supports,
        messages,
    })
}
