use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cone::IntCone;
use super::polytope::LatticePolytope;
use crate::error::{Error, Result};

pub const COVERAGE_SAMPLES: usize = 10_000;
const COVERAGE_SEED: u64 = 0x5eed_fa11;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fan {
    pub nvars: usize,
    pub maximal_cones: Vec<IntCone>,
    /// Vertex of the polytope each cone belongs to, for normal fans.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanWitness {
    /// Two cones share interior points.
    Overlap { i: usize, j: usize },
    /// The intersection is lower dimensional but not a face of both.
    NotAFace { i: usize, j: usize },
    Uncovered { direction: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FanVerdict {
    CompleteFan,
    NotAFan { witnesses: Vec<FanWitness> },
}

impl FanVerdict {
    pub fn is_complete_fan(&self) -> bool {
        matches!(self, FanVerdict::CompleteFan)
    }
}

/// Exact pairwise face tests plus seeded ray shooting for coverage.
///
/// Every witness found is reported, overlaps first.
pub fn fan_check(cones: &[IntCone]) -> Result<FanVerdict> {
    let Some(first) = cones.first() else {
        return Err(Error::Invalid("empty cone list".into()));
    };
    let n = first.nvars();
    for (k, c) in cones.iter().enumerate() {
        if c.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.nvars(),
            });
        }
        if !c.is_full_dimensional() || !c.is_strongly_convex() {
            return Err(Error::Invalid(format!(
                "cone {} ({}) is not a full-dimensional strongly convex cone",
                k, c
            )));
        }
    }
    let mut witnesses = Vec::new();
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let meet = cones[i].intersection(&cones[j]);
            if meet.is_full_dimensional() {
                witnesses.push(FanWitness::Overlap { i, j });
            } else if !cones[i].has_face(&meet) || !cones[j].has_face(&meet) {
                witnesses.push(FanWitness::NotAFace { i, j });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(COVERAGE_SEED);
    for _ in 0..COVERAGE_SAMPLES {
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        if !cones.iter().any(|c| c.contains(&d)) {
            witnesses.push(FanWitness::Uncovered { direction: d });
            break;
        }
    }
    Ok(if witnesses.is_empty() {
        FanVerdict::CompleteFan
    } else {
        FanVerdict::NotAFan { witnesses }
    })
}

/// Vertex cones `{ u : <u, v> >= <u, w> }` of a full-dimensional polytope.
pub fn normal_fan(p: &LatticePolytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::Invalid(format!(
            "normal fan needs a full-dimensional polytope; this one has dimension {} in {}",
            p.dim(),
            p.nvars()
        )));
    }
    let labels: Vec<Vec<i64>> = p.vertices().to_vec();
    let maximal_cones = labels.iter().map(|v| p.normal_cone(v)).collect();
    Ok(Fan {
        nvars: p.nvars(),
        maximal_cones,
        labels: Some(labels),
    })
}

impl Fan {
    /// Union of the rays of all cones, sorted.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .maximal_cones
            .iter()
            .flat_map(|c| c.generators().iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Same cones regardless of order.
    pub fn same_cones(&self, o: &Fan) -> bool {
        self.maximal_cones.len() == o.maximal_cones.len()
            && self
                .maximal_cones
                .iter()
                .all(|c| o.maximal_cones.iter().any(|d| c.same_as(d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadrant(sx: i64, sy: i64) -> IntCone {
        IntCone::from_generators(2, &[vec![sx, 0], vec![0, sy]])
    }

    #[test]
    fn quadrants_form_a_complete_fan() {
        let cs = vec![quadrant(1, 1), quadrant(-1, 1), quadrant(-1, -1), quadrant(1, -1)];
        assert!(fan_check(&cs).unwrap().is_complete_fan());
    }

    #[test]
    fn missing_quadrant_is_uncovered() {
        let cs = vec![quadrant(1, 1), quadrant(-1, 1), quadrant(-1, -1)];
        match fan_check(&cs).unwrap() {
            FanVerdict::NotAFan { witnesses } => {
                assert!(matches!(witnesses[0], FanWitness::Uncovered { .. }))
            }
            v => panic!("{:?}", v),
        }
    }

    #[test]
    fn whole_plane_is_rejected() {
        assert!(fan_check(&[IntCone::whole(2)]).is_err());
    }

    #[test]
    fn triangle_fan() {
        let p = LatticePolytope::from_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let f = normal_fan(&p).unwrap();
        assert_eq!(f.maximal_cones.len(), 3);
        assert!(fan_check(&f.maximal_cones).unwrap().is_complete_fan());
        assert_eq!(f.rays(), vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
    }

    #[test]
    fn flat_polytope_rejected() {
        let p = LatticePolytope::from_points(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(normal_fan(&p).is_err());
    }
}
