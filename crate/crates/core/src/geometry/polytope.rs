use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::cone::{subsets, IntCone};
use super::linalg::{det3, dot, nullspace_i64, rank_i64};
use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::Rat;

pub const MAX_DIM: usize = 3;

/// Outward facet `<normal, x> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// Convex hull of a lattice point set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticePolytope {
    nvars: usize,
    vertices: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    points: Option<Vec<Vec<i64>>>,
    #[serde(skip)]
    hull: Hull,
}

#[derive(Clone, Debug, Default)]
struct Hull {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    /// Inequalities valid on the affine hull, in ambient coordinates.
    facets: Vec<Facet>,
    /// Affine equations `<w, x> = c`.
    equations: Vec<Facet>,
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn full_hull(n: usize, pts: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Facet>) {
    if n == 1 {
        let lo = pts.iter().map(|p| p[0]).min().unwrap();
        let hi = pts.iter().map(|p| p[0]).max().unwrap();
        return (
            vec![vec![lo], vec![hi]],
            vec![
                Facet {
                    normal: vec![-1],
                    offset: -lo,
                },
                Facet {
                    normal: vec![1],
                    offset: hi,
                },
            ],
        );
    }
    let mut facets: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
    for idx in subsets(pts.len(), n) {
        let diffs: Vec<Vec<i64>> = idx[1..].iter().map(|&i| sub(&pts[i], &pts[idx[0]])).collect();
        if rank_i64(&diffs, n) != n - 1 {
            continue;
        }
        let ns = nullspace_i64(&diffs, n);
        let h = &ns[0];
        let off = dot(h, &pts[idx[0]]);
        let (mut above, mut below) = (false, false);
        for p in pts {
            let s = dot(h, p) - off;
            above |= s > 0;
            below |= s < 0;
        }
        if !above {
            facets.insert((h.clone(), off));
        } else if !below {
            facets.insert((h.iter().map(|x| -x).collect(), -off));
        }
    }
    let facets: Vec<Facet> = facets
        .into_iter()
        .map(|(normal, offset)| Facet { normal, offset })
        .collect();
    let vertices = pts
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| dot(&f.normal, p) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            rank_i64(&tight, n) == n
        })
        .cloned()
        .collect();
    (vertices, facets)
}

fn hull(n: usize, pts: &[Vec<i64>]) -> Hull {
    let pts: Vec<Vec<i64>> = pts.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    let dim = rank_i64(&diffs, n);
    let equations: Vec<Facet> = nullspace_i64(&diffs, n)
        .into_iter()
        .map(|w| Facet {
            offset: dot(&w, &pts[0]),
            normal: w,
        })
        .collect();
    if dim == 0 {
        return Hull {
            dim,
            vertices: vec![pts[0].clone()],
            facets: vec![],
            equations,
        };
    }
    if dim == n {
        let (vertices, facets) = full_hull(n, &pts);
        return Hull {
            dim,
            vertices,
            facets,
            equations,
        };
    }
    // project onto coordinates on which the affine hull is a graph
    let coords = subsets(n, dim)
        .into_iter()
        .find(|c| {
            let proj: Vec<Vec<i64>> = diffs.iter().map(|d| c.iter().map(|&i| d[i]).collect()).collect();
            rank_i64(&proj, dim) == dim
        })
        .expect("coordinate projection");
    let proj: Vec<Vec<i64>> = pts.iter().map(|p| coords.iter().map(|&i| p[i]).collect()).collect();
    let (pv, pf) = full_hull(dim, &proj);
    let vertices = pts
        .iter()
        .zip(&proj)
        .filter(|(_, q)| pv.contains(q))
        .map(|(p, _)| p.clone())
        .collect();
    let facets = pf
        .into_iter()
        .map(|f| {
            let mut normal = vec![0; n];
            for (k, &i) in coords.iter().enumerate() {
                normal[i] = f.normal[k];
            }
            Facet {
                normal,
                offset: f.offset,
            }
        })
        .collect();
    Hull {
        dim,
        vertices,
        facets,
        equations,
    }
}

/// Sort planar points counter-clockwise around their centroid.
fn ccw_order(pts: &mut [Vec<i64>]) {
    let m = pts.len() as i64;
    let sx: i64 = pts.iter().map(|p| p[0]).sum();
    let sy: i64 = pts.iter().map(|p| p[1]).sum();
    let rel = |p: &Vec<i64>| (m * p[0] - sx, m * p[1] - sy);
    let half = |(x, y): (i64, i64)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    pts.sort_by(|a, b| {
        let (ra, rb) = (rel(a), rel(b));
        half(ra).cmp(&half(rb)).then_with(|| {
            let cross = ra.0 as i128 * rb.1 as i128 - ra.1 as i128 * rb.0 as i128;
            0.cmp(&cross)
        })
    });
}

impl LatticePolytope {
    pub fn from_points(nvars: usize, pts: &[Vec<i64>]) -> Result<Self> {
        if pts.is_empty() {
            return Err(Error::Invalid("empty point set".into()));
        }
        if nvars > MAX_DIM || nvars == 0 {
            return Err(Error::Unsupported(format!(
                "polytopes are supported in dimensions 1..=3, got {}",
                nvars
            )));
        }
        if pts.iter().any(|p| p.len() != nvars) {
            return Err(Error::Invalid("point of wrong length".into()));
        }
        let mut h = hull(nvars, pts);
        h.vertices.sort();
        let mut all = pts.to_vec();
        all.sort();
        all.dedup();
        Ok(LatticePolytope {
            nvars,
            vertices: h.vertices.clone(),
            points: Some(all),
            hull: h,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn points(&self) -> Option<&[Vec<i64>]> {
        self.points.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.hull.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.hull.dim == self.nvars
    }

    /// Outward facets (only meaningful for full-dimensional polytopes).
    pub fn facets(&self) -> &[Facet] {
        &self.hull.facets
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.hull.equations.iter().all(|e| dot(&e.normal, p) == e.offset)
            && self.hull.facets.iter().all(|f| dot(&f.normal, p) <= f.offset)
    }

    pub fn contains_f64(&self, p: &[f64], tol: f64) -> bool {
        let ev = |f: &Facet| -> f64 { f.normal.iter().zip(p).map(|(a, b)| *a as f64 * b).sum::<f64>() - f.offset as f64 };
        self.hull.equations.iter().all(|e| ev(e).abs() <= tol)
            && self.hull.facets.iter().all(|f| ev(f) <= tol)
    }

    pub fn is_vertex(&self, p: &[i64]) -> bool {
        self.vertices.iter().any(|v| v == p)
    }

    /// Exact `nvars`-dimensional volume (zero when not full-dimensional).
    pub fn volume(&self) -> Rat {
        if !self.is_full_dimensional() {
            return Rat::from_integer(0.into());
        }
        let vs = &self.vertices;
        match self.nvars {
            1 => Rat::from_integer((vs[1][0] - vs[0][0]).abs().into()),
            2 => {
                let mut ps = vs.clone();
                ccw_order(&mut ps);
                let mut twice = 0i64;
                for i in 0..ps.len() {
                    let (a, b) = (&ps[i], &ps[(i + 1) % ps.len()]);
                    twice += a[0] * b[1] - a[1] * b[0];
                }
                Rat::new(BigInt::from(twice.abs()), BigInt::from(2))
            }
            _ => {
                let r = &vs[0];
                let mut six = 0i64;
                for f in &self.hull.facets {
                    if dot(&f.normal, r) == f.offset {
                        continue;
                    }
                    let mut on: Vec<Vec<i64>> = vs.iter().filter(|v| dot(&f.normal, v) == f.offset).cloned().collect();
                    let drop = f.normal.iter().position(|&x| x != 0).unwrap();
                    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
                    let mut planar: Vec<(Vec<i64>, Vec<i64>)> = on
                        .drain(..)
                        .map(|v| (keep.iter().map(|&i| v[i]).collect(), v))
                        .collect();
                    let mut keys: Vec<Vec<i64>> = planar.iter().map(|p| p.0.clone()).collect();
                    ccw_order(&mut keys);
                    planar.sort_by(|a, b| {
                        let ia = keys.iter().position(|k| *k == a.0).unwrap();
                        let ib = keys.iter().position(|k| *k == b.0).unwrap();
                        ia.cmp(&ib)
                    });
                    let ring: Vec<Vec<i64>> = planar.into_iter().map(|p| p.1).collect();
                    for i in 1..ring.len() - 1 {
                        let a = sub(&ring[0], r);
                        let b = sub(&ring[i], r);
                        let c = sub(&ring[i + 1], r);
                        six += det3([&a, &b, &c]).abs();
                    }
                }
                Rat::new(BigInt::from(six), BigInt::from(6))
            }
        }
    }

    /// `{ u : <u, v> >= <u, w> for all w }` at vertex `v`.
    pub fn normal_cone(&self, v: &[i64]) -> IntCone {
        let hs: Vec<Vec<i64>> = self.vertices.iter().filter(|w| w.as_slice() != v).map(|w| sub(v, w)).collect();
        IntCone::from_halfspaces(self.nvars, &hs)
    }

    pub fn minkowski_sum(&self, o: &LatticePolytope) -> Result<LatticePolytope> {
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &o.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePolytope::from_points(self.nvars, &pts)
    }

    pub fn same_vertices(&self, o: &LatticePolytope) -> bool {
        self.vertices == o.vertices
    }
}

/// Convex hull of the exponent support of `f`.
pub fn newton_polytope(f: &MultiPoly) -> Result<LatticePolytope> {
    if f.is_zero() {
        return Err(Error::Invalid("Newton polytope of the zero polynomial".into()));
    }
    let pts: Vec<Vec<i64>> = f
        .support()
        .into_iter()
        .map(|e| e.into_iter().map(|x| x as i64).collect())
        .collect();
    LatticePolytope::from_points(f.nvars(), &pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> MultiPoly {
        crate::algebra::parse_default(s, n).unwrap()
    }

    #[test]
    fn monomial_is_a_point() {
        let p = newton_polytope(&poly("x1^3*x2^5", 2)).unwrap();
        assert_eq!(p.vertices(), &[vec![3, 5]]);
        assert_eq!(p.dim(), 0);
    }

    #[test]
    fn pentagon() {
        let p = newton_polytope(&poly("(1-x1)*(1-x2)*(1-x1-x2)", 2)).unwrap();
        assert_eq!(
            p.vertices(),
            &[vec![0, 0], vec![0, 2], vec![1, 2], vec![2, 0], vec![2, 1]]
        );
        assert_eq!(p.volume(), Rat::new(7.into(), 2.into()));
    }

    #[test]
    fn segment_in_the_plane() {
        let p = LatticePolytope::from_points(2, &[vec![0, 0], vec![1, 1], vec![3, 3]]).unwrap();
        assert_eq!(p.vertices(), &[vec![0, 0], vec![3, 3]]);
        assert!(p.contains(&[2, 2]));
        assert!(!p.contains(&[2, 1]));
        assert!(!p.contains(&[4, 4]));
    }

    #[test]
    fn cube_volume() {
        let mut pts = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    pts.push(vec![2 * a, 2 * b, 2 * c]);
                }
            }
        }
        pts.push(vec![1, 1, 1]);
        let p = LatticePolytope::from_points(3, &pts).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.volume(), Rat::from_integer(8.into()));
        assert_eq!(p.facets().len(), 6);
    }

    #[test]
    fn triangle_normal_cone_at_origin() {
        let p = LatticePolytope::from_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let c = p.normal_cone(&[0, 0]);
        assert!(c.same_as(&IntCone::orthant(2).neg()));
    }
}
