use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::fm::{feasible_point, Constraint, Rel};
use super::linalg::{dot, dot_rat, nullspace_i64, primitive_i64, rank_i64, to_rat};
use crate::error::{Error, Result};
use crate::Rat;

/// Polyhedral cone with integer generators and inequality normals.
///
/// `cone(generators) = { v : <h, v> >= 0 for all h in halfspaces }`. A
/// lineality space is carried as a pair `+w, -w` in the generators; linear
/// equations appear as such pairs in the halfspaces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntCone {
    nvars: usize,
    generators: Vec<Vec<i64>>,
    halfspaces: Vec<Vec<i64>>,
}

fn clean(n: usize, vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let set: BTreeSet<Vec<i64>> = vs
        .iter()
        .inspect(|v| assert_eq!(v.len(), n, "vector length"))
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| primitive_i64(v))
        .collect();
    set.into_iter().collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

/// Irredundant inequality normals of `cone(vs)`.
pub fn facets_of(n: usize, vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let vs = clean(n, vs);
    let perp = nullspace_i64(&vs, n);
    let d = n - perp.len();
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    for w in &perp {
        out.insert(w.clone());
        out.insert(w.iter().map(|x| -x).collect());
    }
    if d == 0 {
        return out.into_iter().collect();
    }
    for sub in combinations(vs.len(), d - 1) {
        let mut rows: Vec<Vec<i64>> = sub.iter().map(|&i| vs[i].clone()).collect();
        if rank_i64(&rows, n) != d - 1 {
            continue;
        }
        rows.extend(perp.iter().cloned());
        let ns = nullspace_i64(&rows, n);
        if ns.len() != 1 {
            continue;
        }
        let h = &ns[0];
        let (mut pos, mut neg) = (false, false);
        for v in &vs {
            let s = dot(h, v);
            pos |= s > 0;
            neg |= s < 0;
        }
        if pos && !neg {
            out.insert(h.clone());
        } else if neg && !pos {
            out.insert(h.iter().map(|x| -x).collect());
        }
    }
    out.into_iter().collect()
}

impl IntCone {
    pub fn from_generators(nvars: usize, gens: &[Vec<i64>]) -> Self {
        let halfspaces = facets_of(nvars, gens);
        let generators = facets_of(nvars, &halfspaces);
        IntCone {
            nvars,
            generators,
            halfspaces,
        }
    }

    pub fn from_halfspaces(nvars: usize, hs: &[Vec<i64>]) -> Self {
        let generators = facets_of(nvars, hs);
        let halfspaces = facets_of(nvars, &generators);
        IntCone {
            nvars,
            generators,
            halfspaces,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_generators(nvars, &[])
    }

    pub fn whole(nvars: usize) -> Self {
        Self::from_halfspaces(nvars, &[])
    }

    pub fn orthant(nvars: usize) -> Self {
        let gens: Vec<Vec<i64>> = (0..nvars)
            .map(|i| (0..nvars).map(|j| (i == j) as i64).collect())
            .collect();
        Self::from_generators(nvars, &gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn halfspaces(&self) -> &[Vec<i64>] {
        &self.halfspaces
    }

    pub fn dual(&self) -> IntCone {
        IntCone {
            nvars: self.nvars,
            generators: self.halfspaces.clone(),
            halfspaces: self.generators.clone(),
        }
    }

    pub fn neg(&self) -> IntCone {
        let f = |vs: &[Vec<i64>]| -> Vec<Vec<i64>> {
            let s: BTreeSet<Vec<i64>> = vs.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
            s.into_iter().collect()
        };
        IntCone {
            nvars: self.nvars,
            generators: f(&self.generators),
            halfspaces: f(&self.halfspaces),
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.halfspaces.iter().all(|h| dot(h, v) >= 0)
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        use num_traits::Signed;
        self.halfspaces.iter().all(|h| !dot_rat(h, v).is_negative())
    }

    pub fn contains_f64(&self, v: &[f64], tol: f64) -> bool {
        self.halfspaces.iter().all(|h| {
            let s: f64 = h.iter().zip(v).map(|(a, b)| *a as f64 * b).sum();
            let norm: f64 = h.iter().map(|a| (*a as f64).powi(2)).sum::<f64>().sqrt();
            s >= -tol * norm
        })
    }

    /// Strict interior membership (all inequalities strict).
    pub fn contains_interior(&self, v: &[i64]) -> bool {
        self.halfspaces.iter().all(|h| dot(h, v) > 0)
    }

    pub fn dim(&self) -> usize {
        rank_i64(&self.generators, self.nvars)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.nvars
    }

    /// No line through the origin lies in the cone.
    pub fn is_strongly_convex(&self) -> bool {
        rank_i64(&self.halfspaces, self.nvars) == self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_subset_of(&self, o: &IntCone) -> bool {
        self.generators.iter().all(|g| o.contains(g))
    }

    pub fn same_as(&self, o: &IntCone) -> bool {
        self.nvars == o.nvars && self.is_subset_of(o) && o.is_subset_of(self)
    }

    pub fn intersection(&self, o: &IntCone) -> IntCone {
        let mut hs = self.halfspaces.clone();
        hs.extend(o.halfspaces.iter().cloned());
        IntCone::from_halfspaces(self.nvars, &hs)
    }

    /// Sum of the generators, a relative interior point.
    pub fn interior_point(&self) -> Vec<i64> {
        let mut v = vec![0; self.nvars];
        for g in &self.generators {
            for (a, b) in v.iter_mut().zip(g) {
                *a += b;
            }
        }
        v
    }

    /// Whether `f` (a subcone) is a face of `self`.
    pub fn has_face(&self, f: &IntCone) -> bool {
        if !f.is_subset_of(self) {
            return false;
        }
        let zero_on_f: Vec<&Vec<i64>> = self
            .halfspaces
            .iter()
            .filter(|h| f.generators.iter().all(|g| dot(h, g) == 0))
            .collect();
        let face_gens: Vec<Vec<i64>> = self
            .generators
            .iter()
            .filter(|g| zero_on_f.iter().all(|h| dot(h, g) == 0))
            .cloned()
            .collect();
        IntCone::from_generators(self.nvars, &face_gens).same_as(f)
    }

    /// Rays in canonical (sorted, primitive) form; for pointed cones these
    /// are the extreme rays.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        self.generators.clone()
    }
}

impl PartialEq for IntCone {
    fn eq(&self, o: &Self) -> bool {
        self.same_as(o)
    }
}

impl fmt::Display for IntCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let xs: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "cone{{{}}}", parts.join(","))
    }
}

/// `cone^dual = { v : <u, v> >= 0 for all u in cone }`.
pub fn dual_cone(c: &IntCone) -> IntCone {
    c.dual()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

/// `<normal, s> sense bound`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub normal: Vec<i64>,
    #[serde(with = "crate::ser::rat")]
    pub bound: Rat,
    pub sense: Sense,
}

impl Inequality {
    pub fn new(normal: Vec<i64>, bound: Rat, sense: Sense) -> Self {
        Inequality {
            normal,
            bound,
            sense,
        }
    }

    pub fn holds(&self, s: &[Rat]) -> bool {
        let v = dot_rat(&self.normal, s);
        match self.sense {
            Sense::Le => v <= self.bound,
            Sense::Ge => v >= self.bound,
            Sense::Eq => v == self.bound,
        }
    }

    pub fn holds_int(&self, s: &[i64]) -> bool {
        self.holds(&to_rat(s))
    }

    fn to_constraints(&self) -> Vec<Constraint<Rat>> {
        let a = to_rat(&self.normal);
        let neg: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
        match self.sense {
            Sense::Le => vec![Constraint::new(a, -self.bound.clone(), Rel::Le)],
            Sense::Ge => vec![Constraint::new(neg, self.bound.clone(), Rel::Le)],
            Sense::Eq => vec![Constraint::new(a, -self.bound.clone(), Rel::Eq)],
        }
    }
}

/// A real point of the polyhedron, if nonempty.
pub fn polyhedron_point(nvars: usize, ineqs: &[Inequality]) -> Option<Vec<Rat>> {
    let cs: Vec<Constraint<Rat>> = ineqs.iter().flat_map(|i| i.to_constraints()).collect();
    feasible_point(&cs, nvars)
}

/// Recession cone of `{ s : inequalities }`; empty polyhedra are an error.
pub fn recession_cone(nvars: usize, ineqs: &[Inequality]) -> Result<IntCone> {
    if let Some(i) = ineqs.iter().find(|i| i.normal.len() != nvars) {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            got: i.normal.len(),
        });
    }
    if polyhedron_point(nvars, ineqs).is_none() {
        return Err(Error::Invalid("empty polyhedron".into()));
    }
    Ok(recession_cone_unchecked(nvars, ineqs))
}

pub(crate) fn recession_cone_unchecked(nvars: usize, ineqs: &[Inequality]) -> IntCone {
    let mut hs = Vec::new();
    for i in ineqs {
        let neg: Vec<i64> = i.normal.iter().map(|x| -x).collect();
        match i.sense {
            Sense::Le => hs.push(neg),
            Sense::Ge => hs.push(i.normal.clone()),
            Sense::Eq => {
                hs.push(neg);
                hs.push(i.normal.clone());
            }
        }
    }
    IntCone::from_halfspaces(nvars, &hs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    fn cone(g: &[[i64; 2]]) -> IntCone {
        IntCone::from_generators(2, &g.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = IntCone::orthant(2);
        assert!(q.dual().same_as(&q));
    }

    #[test]
    fn dual_of_plane_is_origin() {
        let d = IntCone::whole(2).dual();
        assert!(d.is_zero());
    }

    #[test]
    fn dual_of_narrow_cone() {
        let c = cone(&[[2, 1], [1, 2]]);
        let d = c.dual();
        assert_eq!(d.generators(), &[vec![-1, 2], vec![2, -1]]);
        for g in c.generators() {
            for h in d.generators() {
                assert!(dot(g, h) >= 0);
            }
        }
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = cone(&[[1, 0], [0, 1], [1, 1], [2, 2]]);
        assert_eq!(c.generators(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn halfplane_has_lineality() {
        let c = cone(&[[1, 0], [0, 1], [0, -1]]);
        assert!(!c.is_strongly_convex());
        assert_eq!(c.halfspaces(), &[vec![1, 0]]);
        assert!(c.contains(&[3, -7]));
    }

    #[test]
    fn recession_of_box_is_origin() {
        let ineqs = vec![
            Inequality::new(vec![1, 0], rat(1), Sense::Ge),
            Inequality::new(vec![1, 0], rat(2), Sense::Le),
            Inequality::new(vec![0, 1], rat(1), Sense::Ge),
            Inequality::new(vec![0, 1], rat(3), Sense::Le),
        ];
        assert!(recession_cone(2, &ineqs).unwrap().is_zero());
    }

    #[test]
    fn recession_of_strip_is_ray() {
        let ineqs = vec![
            Inequality::new(vec![1, 0], rat(4), Sense::Ge),
            Inequality::new(vec![0, 1], rat(1), Sense::Ge),
            Inequality::new(vec![0, 1], rat(3), Sense::Le),
        ];
        let c = recession_cone(2, &ineqs).unwrap();
        assert_eq!(c.generators(), &[vec![1, 0]]);
    }

    #[test]
    fn empty_polyhedron_flagged() {
        let ineqs = vec![
            Inequality::new(vec![1], rat(4), Sense::Ge),
            Inequality::new(vec![1], rat(3), Sense::Le),
        ];
        assert!(recession_cone(1, &ineqs).is_err());
    }

    #[test]
    fn faces_of_quadrant() {
        let q = IntCone::orthant(2);
        assert!(q.has_face(&cone(&[[1, 0]])));
        assert!(q.has_face(&IntCone::zero(2)));
        assert!(!q.has_face(&cone(&[[1, 1]])));
    }
}
