//! Lattice regions `{ s in Z^n : constraints on s + gamma }`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::cone::recession_cone_unchecked;
use crate::geometry::{Inequality, IntCone, Sense};
use crate::Rat;

/// Largest coordinate searched when a witness point is not supplied.
pub const WITNESS_SEARCH_RADIUS: i64 = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportSpec {
    #[serde(with = "crate::ser::rat_vec")]
    pub gamma: Vec<Rat>,
    /// Conditions on `u = s + gamma`.
    pub constraints: Vec<Inequality>,
    pub cone: IntCone,
    /// A lattice point `s` of the region.
    pub witness: Vec<i64>,
}

impl SupportSpec {
    pub fn new(gamma: Vec<Rat>, constraints: Vec<Inequality>) -> Result<SupportSpec> {
        let n = gamma.len();
        let probe = SupportSpec {
            cone: IntCone::whole(n),
            gamma,
            constraints,
            witness: vec![0; n],
        };
        let w = probe
            .search_witness(WITNESS_SEARCH_RADIUS)
            .ok_or_else(|| Error::Invalid(format!("no lattice point with |s_i| <= {}", WITNESS_SEARCH_RADIUS)))?;
        SupportSpec::with_witness(probe.gamma, probe.constraints, w)
    }

    pub fn with_witness(gamma: Vec<Rat>, constraints: Vec<Inequality>, witness: Vec<i64>) -> Result<SupportSpec> {
        let n = gamma.len();
        if let Some(c) = constraints.iter().find(|c| c.normal.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.normal.len(),
            });
        }
        let cone = recession_cone_unchecked(n, &constraints);
        let s = SupportSpec {
            gamma,
            constraints,
            cone,
            witness,
        };
        if !s.contains(&s.witness) {
            return Err(Error::Invalid(format!("witness {:?} violates the constraints", s.witness)));
        }
        Ok(s)
    }

    /// `N_0^n`.
    pub fn orthant(n: usize) -> SupportSpec {
        let cs = (0..n)
            .map(|i| {
                let mut a = vec![0; n];
                a[i] = 1;
                Inequality::new(a, Rat::zero(), Sense::Ge)
            })
            .collect();
        SupportSpec::with_witness(vec![Rat::zero(); n], cs, vec![0; n]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.gamma.len()
    }

    pub fn contains(&self, s: &[i64]) -> bool {
        let u: Vec<Rat> = s
            .iter()
            .zip(&self.gamma)
            .map(|(x, g)| Rat::from_integer((*x).into()) + g)
            .collect();
        self.constraints.iter().all(|c| c.holds(&u))
    }

    /// Lattice points with `max |s_i| <= radius`, in lexicographic order.
    pub fn lattice_points(&self, radius: i64) -> Vec<Vec<i64>> {
        box_points(self.nvars(), radius)
            .into_iter()
            .filter(|s| self.contains(s))
            .collect()
    }

    fn search_witness(&self, radius: i64) -> Option<Vec<i64>> {
        for r in 0..=radius {
            let found = box_points(self.nvars(), r)
                .into_iter()
                .filter(|s| s.iter().map(|x| x.abs()).max().unwrap_or(0) == r)
                .find(|s| self.contains(s));
            if found.is_some() {
                return found;
            }
        }
        None
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.cone.is_strongly_convex()
    }
}

/// All integer points of `[-r, r]^n`, lexicographically.
pub fn box_points(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    #[test]
    fn orthant_support() {
        let s = SupportSpec::orthant(2);
        assert!(s.contains(&[0, 3]));
        assert!(!s.contains(&[-1, 3]));
        assert!(s.cone.same_as(&IntCone::orthant(2)));
        assert_eq!(s.lattice_points(1).len(), 4);
    }

    #[test]
    fn witness_is_found() {
        let cs = vec![
            Inequality::new(vec![1, 0], rat(4), Sense::Ge),
            Inequality::new(vec![0, 1], rat(1), Sense::Ge),
            Inequality::new(vec![0, 1], rat(3), Sense::Le),
        ];
        let s = SupportSpec::new(vec![rat(0), rat(0)], cs).unwrap();
        assert!(s.contains(&s.witness));
        assert!(s.cone.same_as(&IntCone::from_generators(2, &[vec![1, 0]])));
        let empty = vec![Inequality::new(vec![1, 0], rat(100), Sense::Ge)];
        assert!(SupportSpec::new(vec![rat(0), rat(0)], empty).is_err());
    }
}
