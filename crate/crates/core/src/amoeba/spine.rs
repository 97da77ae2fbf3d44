//! Non-smoothness locus of `max_nu (log |c_nu| + <t, nu>)` and the dual
//! subdivision of the Newton polytope.
//!
//! Every set `T` of pieces that are exactly the maximizers somewhere is
//! found by depth-first search over index sets, pruned by Fourier-Motzkin
//! feasibility of "pieces in `T` tie and dominate the rest". Constants are
//! exact in `Q log 2 + Q log 3` when possible.

use serde::{Deserialize, Serialize};

use super::logconst::{Approx, LogValue};
use super::ronkin::RonkinPiece;
use crate::error::{Error, Result};
use crate::geometry::fm::{feasible_point, Constraint, Rel, Scalar};
use crate::geometry::linalg::rank_i64;
use crate::geometry::{IntCone, LatticePolytope};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpineCell {
    /// Indices of the tying pieces.
    pub members: Vec<usize>,
    pub dim: usize,
    /// A relative-interior point and the common value there.
    pub point: Vec<f64>,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_point: Option<Vec<LogValue>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_value: Option<LogValue>,
    /// Generators of the recession cone (empty when bounded).
    pub rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualCell {
    pub members: Vec<usize>,
    pub vertices: Vec<Vec<i64>>,
    pub dim: usize,
    pub simplicial: bool,
    #[serde(with = "crate::ser::rat")]
    pub volume: Rat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpineComplex {
    pub nvars: usize,
    pub pieces: Vec<RonkinPiece>,
    /// All constants exact, all comparisons certified.
    pub certified: bool,
    /// Pieces that are the unique maximum on an open set.
    pub regions: Vec<usize>,
    pub cells: Vec<SpineCell>,
    /// Indices into `cells` of the codimension-one cells.
    pub walls: Vec<usize>,
    /// `dual_cells[k]` is dual to `cells[k]`.
    pub dual_cells: Vec<DualCell>,
}

impl SpineComplex {
    /// Total volume of the full-dimensional dual cells.
    pub fn dual_volume(&self) -> Rat {
        self.dual_cells
            .iter()
            .filter(|d| d.dim == self.nvars)
            .fold(Rat::from_integer(0.into()), |acc, d| acc + &d.volume)
    }

    /// Maximizing pieces at an exact point.
    pub fn maximizers_at(&self, t: &[LogValue]) -> Result<Vec<usize>> {
        let consts: Vec<LogValue> = self
            .pieces
            .iter()
            .map(|p| p.exact.map(|c| c.to_log_value()))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Unsupported("pieces have inexact constants".into()))?;
        let vals: Vec<LogValue> = self
            .pieces
            .iter()
            .zip(&consts)
            .map(|(p, c)| {
                p.nu.iter()
                    .zip(t)
                    .fold(c.clone(), |acc, (a, x)| acc.add(&x.scale(&Rat::from_integer((*a).into()))))
            })
            .collect();
        let mut best = vec![0usize];
        for k in 1..vals.len() {
            match vals[k].minus(&vals[best[0]]).signum() {
                1 => best = vec![k],
                0 => best.push(k),
                _ => {}
            }
        }
        Ok(best)
    }

    pub fn cell_with_members(&self, members: &[usize]) -> Option<(&SpineCell, &DualCell)> {
        let k = self.cells.iter().position(|c| c.members == members)?;
        Some((&self.cells[k], &self.dual_cells[k]))
    }
}

fn diff(a: &[i64], b: &[i64]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| Rat::from_integer((x - y).into())).collect()
}

fn tie_system<S: Scalar>(nus: &[Vec<i64>], consts: &[S], members: &[usize], strict: bool) -> Vec<Constraint<S>> {
    let i0 = members[0];
    let mut out = Vec::new();
    for (k, nu) in nus.iter().enumerate() {
        if k == i0 {
            continue;
        }
        let rel = if members.contains(&k) {
            Rel::Eq
        } else if strict {
            Rel::Lt
        } else {
            Rel::Le
        };
        out.push(Constraint::new(diff(nu, &nus[i0]), consts[k].minus(&consts[i0]), rel));
    }
    out
}

/// Exact maximizer sets with a witness point each.
fn maximizer_sets<S: Scalar>(nus: &[Vec<i64>], consts: &[S], n: usize) -> Vec<(Vec<usize>, Vec<S>)> {
    let m = nus.len();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..m).rev().map(|i| vec![i]).collect();
    while let Some(t) = stack.pop() {
        if feasible_point(&tie_system(nus, consts, &t, false), n).is_none() {
            continue;
        }
        if let Some(p) = feasible_point(&tie_system(nus, consts, &t, true), n) {
            out.push((t.clone(), p));
        }
        let last = *t.last().unwrap();
        for j in (last + 1..m).rev() {
            let mut u = t.clone();
            u.push(j);
            stack.push(u);
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    out
}

fn recession(nus: &[Vec<i64>], members: &[usize], n: usize) -> IntCone {
    let i0 = members[0];
    let mut hs = Vec::new();
    for (k, nu) in nus.iter().enumerate() {
        if k == i0 {
            continue;
        }
        let d: Vec<i64> = nus[i0].iter().zip(nu).map(|(a, b)| a - b).collect();
        if members.contains(&k) {
            hs.push(d.iter().map(|x| -x).collect());
        }
        hs.push(d);
    }
    IntCone::from_halfspaces(n, &hs)
}

fn build<S: Scalar>(
    pieces: &[RonkinPiece],
    consts: &[S],
    n: usize,
    to_f64: impl Fn(&S) -> f64,
    exact: impl Fn(&S) -> Option<LogValue>,
) -> Result<SpineComplex> {
    let nus: Vec<Vec<i64>> = pieces.iter().map(|p| p.nu.clone()).collect();
    let mut regions = Vec::new();
    let mut cells = Vec::new();
    let mut dual_cells = Vec::new();
    for (members, point) in maximizer_sets(&nus, consts, n) {
        if members.len() == 1 {
            regions.push(members[0]);
            continue;
        }
        let i0 = members[0];
        let span: Vec<Vec<i64>> = members[1..]
            .iter()
            .map(|&k| nus[k].iter().zip(&nus[i0]).map(|(a, b)| a - b).collect())
            .collect();
        let dim = n - rank_i64(&span, n);
        let value = nus[i0]
            .iter()
            .zip(&point)
            .fold(consts[i0].clone(), |acc, (a, x)| acc.add(&x.scale(&Rat::from_integer((*a).into()))));
        let ex_point: Option<Vec<LogValue>> = point.iter().map(&exact).collect();
        let rays = recession(&nus, &members, n).rays();
        let verts: Vec<Vec<i64>> = members.iter().map(|&k| nus[k].clone()).collect();
        let poly = LatticePolytope::from_points(n, &verts)?;
        let pdim = poly.dim();
        dual_cells.push(DualCell {
            members: members.clone(),
            vertices: poly.vertices().to_vec(),
            dim: pdim,
            simplicial: poly.vertices().len() == pdim + 1,
            volume: poly.volume(),
        });
        cells.push(SpineCell {
            members,
            dim,
            point: point.iter().map(&to_f64).collect(),
            value: to_f64(&value),
            exact_value: exact(&value),
            exact_point: ex_point,
            rays,
        });
    }
    let walls = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim + 1 == n)
        .map(|(k, _)| k)
        .collect();
    Ok(SpineComplex {
        nvars: n,
        pieces: pieces.to_vec(),
        certified: false,
        regions,
        cells,
        walls,
        dual_cells,
    })
}

pub fn spine(pieces: &[RonkinPiece]) -> Result<SpineComplex> {
    if pieces.len() < 2 {
        return Err(Error::Invalid("a spine needs at least two pieces".into()));
    }
    let n = pieces[0].nu.len();
    if n == 0 || pieces.iter().any(|p| p.nu.len() != n) {
        return Err(Error::Invalid("pieces have inconsistent dimensions".into()));
    }
    for (i, p) in pieces.iter().enumerate() {
        if pieces[..i].iter().any(|q| q.nu == p.nu) {
            return Err(Error::Invalid(format!("duplicate gradient {:?}", p.nu)));
        }
    }
    let exact: Option<Vec<LogValue>> = pieces.iter().map(|p| p.exact.map(|c| c.to_log_value())).collect();
    match exact {
        Some(consts) => {
            let mut s = build(pieces, &consts, n, |v: &LogValue| v.value(), |v| Some(v.clone()))?;
            s.certified = true;
            Ok(s)
        }
        None => {
            let consts: Vec<Approx> = pieces.iter().map(|p| Approx(p.log_abs)).collect();
            build(pieces, &consts, n, |v: &Approx| v.0, |_| None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_default;
    use crate::amoeba::ronkin::vertex_pieces;

    #[test]
    fn tropical_line() {
        let s = spine(&vertex_pieces(&parse_default("1 - x1 - x2", 2).unwrap()).unwrap()).unwrap();
        assert!(s.certified);
        assert_eq!(s.regions.len(), 3);
        assert_eq!(s.walls.len(), 3);
        let mut rays: Vec<Vec<i64>> = s.walls.iter().flat_map(|&w| s.cells[w].rays.clone()).collect();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
        let vertex: Vec<&SpineCell> = s.cells.iter().filter(|c| c.dim == 0).collect();
        assert_eq!(vertex.len(), 1);
        assert_eq!(vertex[0].exact_point, Some(vec![LogValue::log2(0), LogValue::log2(0)]));
        let tri = s.dual_cells.iter().find(|d| d.dim == 2).unwrap();
        assert!(tri.simplicial);
        assert_eq!(s.dual_volume(), Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn shifted_point() {
        // max(2 log 2, t): single wall at t = 2 log 2
        let s = spine(&vertex_pieces(&parse_default("4 - x1", 1).unwrap()).unwrap()).unwrap();
        assert_eq!(s.cells.len(), 1);
        assert_eq!(s.cells[0].exact_point, Some(vec![LogValue::log2(2)]));
    }

    #[test]
    fn inexact_constants_fall_back() {
        let s = spine(&vertex_pieces(&parse_default("5 - x1 - x2", 2).unwrap()).unwrap()).unwrap();
        assert!(!s.certified);
        let v = s.cells.iter().find(|c| c.dim == 0).unwrap();
        assert!((v.point[0] - 5f64.ln()).abs() < 1e-9);
    }
}
