//! Grid classification of a box in `R^n` and the census of amoeba
//! complement components.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::membership::{Membership, MembershipParams, Oracle};
use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::geometry::{newton_polytope, LatticePolytope};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum CellState {
    Inside,
    Outside { order: Vec<i64> },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    /// Per-axis bounds; `None` picks the default box.
    #[serde(default)]
    pub lo: Option<Vec<f64>>,
    #[serde(default)]
    pub hi: Option<Vec<f64>>,
    /// Cells per axis; `None` means 200 in the plane and 48 in space.
    #[serde(default)]
    pub resolution: Option<usize>,
    #[serde(default)]
    pub membership: MembershipParams,
    /// Fraction of UNKNOWN cells above which the verdict is inconclusive.
    #[serde(default = "default_unknown")]
    pub max_unknown: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_unknown() -> f64 {
    0.1
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            lo: None,
            hi: None,
            resolution: None,
            membership: MembershipParams::default(),
            max_unknown: default_unknown(),
            seed: 0,
        }
    }
}

impl GridParams {
    pub fn with_box(mut self, lo: f64, hi: f64, n: usize) -> Self {
        self.lo = Some(vec![lo; n]);
        self.hi = Some(vec![hi; n]);
        self
    }

    pub fn with_resolution(mut self, r: usize) -> Self {
        self.resolution = Some(r);
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmoebaGrid {
    pub nvars: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub resolution: usize,
    /// Row-major with the first coordinate varying fastest.
    pub cells: Vec<CellState>,
}

impl AmoebaGrid {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, lin: usize) -> Vec<usize> {
        let mut r = lin;
        (0..self.nvars)
            .map(|_| {
                let k = r % self.resolution;
                r /= self.resolution;
                k
            })
            .collect()
    }

    pub fn center(&self, lin: usize) -> Vec<f64> {
        self.index_of(lin)
            .iter()
            .enumerate()
            .map(|(i, &k)| self.lo[i] + (k as f64 + 0.5) * (self.hi[i] - self.lo[i]) / self.resolution as f64)
            .collect()
    }

    /// CSV rows `t1,..,tn,state,order`.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let head: Vec<String> = (1..=self.nvars).map(|i| format!("t{}", i)).collect();
        let _ = writeln!(s, "{},state,order", head.join(","));
        for (lin, c) in self.cells.iter().enumerate() {
            let t: Vec<String> = self.center(lin).iter().map(|v| format!("{:.6}", v)).collect();
            let (state, order) = match c {
                CellState::Inside => ("inside", String::new()),
                CellState::Unknown => ("unknown", String::new()),
                CellState::Outside { order } => (
                    "outside",
                    order.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
                ),
            };
            let _ = writeln!(s, "{},{},{}", t.join(","), state, order);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub order: Vec<i64>,
    pub cells: usize,
    /// Face-connected pieces merged because they share the order.
    pub fragments: usize,
    /// Center of the component's first cell.
    pub representative: Vec<f64>,
    pub is_vertex: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Solid,
    NotSolid,
    /// Too many UNKNOWN cells; refine the resolution.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    pub components: Vec<Component>,
    pub vertex_count: usize,
    pub inside_cells: usize,
    pub outside_cells: usize,
    pub unknown_cells: usize,
    pub unknown_fraction: f64,
    pub verdict: Verdict,
    pub messages: Vec<String>,
}

impl Census {
    pub fn orders(&self) -> Vec<Vec<i64>> {
        self.components.iter().map(|c| c.order.clone()).collect()
    }
}

/// Symmetric box `[-r, r]^n` with `r = max(4, 2 max |log |c_a / c_b||)`.
pub fn default_radius(f: &MultiPoly) -> f64 {
    let logs: Vec<f64> = f
        .terms()
        .map(|(_, c)| crate::algebra::poly::rat_to_f64(c).abs().ln())
        .collect();
    let hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = logs.iter().cloned().fold(f64::INFINITY, f64::min);
    (2.0 * (hi - lo)).max(4.0)
}

fn cell_seed(seed: u64, lin: usize) -> u64 {
    seed ^ (lin as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Classify every cell center of the grid.
pub fn classify_grid(f: &MultiPoly, params: &GridParams) -> Result<(AmoebaGrid, LatticePolytope)> {
    let n = f.nvars();
    if !(1..=3).contains(&n) {
        return Err(Error::Unsupported(format!("amoeba grids need 1 to 3 variables, got {}", n)));
    }
    let np = newton_polytope(f)?;
    let r = default_radius(f);
    let lo = params.lo.clone().unwrap_or_else(|| vec![-r; n]);
    let hi = params.hi.clone().unwrap_or_else(|| vec![r; n]);
    if lo.len() != n || hi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: lo.len().min(hi.len()),
        });
    }
    if lo.iter().zip(&hi).any(|(a, b)| !(a < b)) {
        return Err(Error::InvalidParameter("grid bounds must satisfy lo < hi".into()));
    }
    let res = params.resolution.unwrap_or(if n == 3 { 48 } else { 200 });
    if res == 0 {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    let oracle = Oracle::new(f, params.membership)?;
    let mut grid = AmoebaGrid {
        nvars: n,
        lo,
        hi,
        resolution: res,
        cells: Vec::new(),
    };
    let total = res.pow(n as u32);
    grid.cells = (0..total)
        .into_par_iter()
        .map(|lin| {
            let t = grid.center(lin);
            let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(params.seed, lin));
            match oracle.classify(&t, &mut rng) {
                Membership::Outside { order, .. } => {
                    if np.contains(&order) {
                        CellState::Outside { order }
                    } else {
                        CellState::Unknown
                    }
                }
                Membership::Inside { .. } => CellState::Inside,
                Membership::Unknown { .. } => CellState::Unknown,
            }
        })
        .collect();
    Ok((grid, np))
}

/// Components of the OUTSIDE cells: face-adjacent cells with equal orders
/// are joined, then pieces sharing an order are merged.
pub fn census_of(grid: &AmoebaGrid, np: &LatticePolytope, max_unknown: f64) -> Census {
    let total = grid.len();
    let mut uf = UnionFind::<usize>::new(total);
    let res = grid.resolution;
    let mut stride = 1;
    for _ in 0..grid.nvars {
        for lin in 0..total {
            if (lin / stride) % res + 1 == res {
                continue;
            }
            let nb = lin + stride;
            if let (CellState::Outside { order: a }, CellState::Outside { order: b }) = (&grid.cells[lin], &grid.cells[nb]) {
                if a == b {
                    uf.union(lin, nb);
                }
            }
        }
        stride *= res;
    }
    let mut by_order: BTreeMap<Vec<i64>, (usize, usize, Vec<usize>)> = BTreeMap::new();
    let (mut inside, mut outside, mut unknown) = (0, 0, 0);
    for (lin, c) in grid.cells.iter().enumerate() {
        match c {
            CellState::Inside => inside += 1,
            CellState::Unknown => unknown += 1,
            CellState::Outside { order } => {
                outside += 1;
                let e = by_order.entry(order.clone()).or_insert((lin, 0, Vec::new()));
                e.1 += 1;
                let root = uf.find(lin);
                if !e.2.contains(&root) {
                    e.2.push(root);
                }
            }
        }
    }
    let mut components: Vec<Component> = by_order
        .into_iter()
        .map(|(order, (first, cells, roots))| Component {
            is_vertex: np.is_vertex(&order),
            representative: grid.center(first),
            order,
            cells,
            fragments: roots.len(),
        })
        .collect();
    components.sort_by(|a, b| a.order.cmp(&b.order));
    let unknown_fraction = if total == 0 { 0.0 } else { unknown as f64 / total as f64 };
    let vertex_count = np.vertices().len();
    let mut messages = Vec::new();
    let verdict = if unknown_fraction > max_unknown {
        messages.push(format!(
            "inconclusive, refine resolution: {:.1}% of cells are UNKNOWN",
            100.0 * unknown_fraction
        ));
        Verdict::Inconclusive
    } else if components.len() == vertex_count && components.iter().all(|c| c.is_vertex) {
        Verdict::Solid
    } else {
        for c in components.iter().filter(|c| !c.is_vertex) {
            messages.push(format!("component of order {:?} is not a vertex of the Newton polytope", c.order));
        }
        if components.len() < vertex_count {
            messages.push(format!(
                "{} components found but the Newton polytope has {} vertices; the box may be too small",
                components.len(),
                vertex_count
            ));
        }
        Verdict::NotSolid
    };
    Census {
        components,
        vertex_count,
        inside_cells: inside,
        outside_cells: outside,
        unknown_cells: unknown,
        unknown_fraction,
        verdict,
        messages,
    }
}

pub fn component_census(f: &MultiPoly, params: &GridParams) -> Result<(AmoebaGrid, Census)> {
    let (grid, np) = classify_grid(f, params)?;
    let c = census_of(&grid, &np, params.max_unknown);
    Ok((grid, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_default;

    #[test]
    fn line_has_three_components() {
        let f = parse_default("1 - x1 - x2", 2).unwrap();
        let (grid, c) = component_census(&f, &GridParams::default().with_box(-6.0, 6.0, 2).with_resolution(60)).unwrap();
        assert_eq!(grid.len(), 3600);
        assert_eq!(c.orders(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(c.verdict, Verdict::Solid);
        assert!(c.inside_cells > 0);
        assert!(c.components.iter().all(|k| k.fragments == 1));
    }

    #[test]
    fn monomial_has_empty_amoeba() {
        let f = parse_default("x1^2*x2", 2).unwrap();
        let (_, c) = component_census(&f, &GridParams::default().with_resolution(10)).unwrap();
        assert_eq!(c.orders(), vec![vec![2, 1]]);
        assert_eq!(c.inside_cells, 0);
        assert_eq!(c.verdict, Verdict::Solid);
    }

    #[test]
    fn grid_is_seed_deterministic() {
        let f = parse_default("1 - x1 - x2 + 3*x1*x2", 2).unwrap();
        let p = GridParams::default().with_resolution(24);
        let a = classify_grid(&f, &p).unwrap().0;
        let b = classify_grid(&f, &p).unwrap().0;
        assert_eq!(a.cells, b.cells);
        assert!(a.to_csv().starts_with("t1,t2,state,order\n"));
    }
}
