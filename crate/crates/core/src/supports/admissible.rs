//! Irreducible supports of series solutions of a Horn system.
//!
//! With `p_i(s) = P_i(s + gamma)` and `q_i(s) = Q_i(s + gamma + e_i)`, a set
//! `S` carries a solution of the difference system exactly when, for every
//! `s` in `S` and every `i`:
//!
//! * `q_i(s) != 0`,
//! * `s + e_i` is in `S` iff `p_i(s) != 0`,
//! * `s - e_i` is in `S` iff `q_i(s - e_i) != 0`.
//!
//! A point is therefore excluded when some `q_i` vanishes there or when it
//! is `t + e_i` with `p_i(t) = 0 != q_i(t)`; exclusion spreads along edges
//! `t -- t + e_i` with `p_i(t) q_i(t) != 0`. The irreducible supports are the
//! connected components of what remains.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::spec::{box_points, SupportSpec};
use crate::error::{Error, Result};
use crate::geometry::cone::subsets;
use crate::geometry::linalg::{dot_rat, primitive, rank, solve};
use crate::geometry::{Inequality, Sense};
use crate::horn::linform::{Factored, LinForm};
use crate::horn::system::HornSystem;
use crate::Rat;

pub const DEFAULT_WINDOW: i64 = 32;

struct Shifted {
    p: Vec<Factored>,
    q: Vec<Factored>,
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); n];
    e[i] = Rat::from_integer(1.into());
    e
}

fn shifted(h: &HornSystem, gamma: &[Rat]) -> Result<Shifted> {
    let fac = h.factored().ok_or_else(|| {
        Error::Invalid("admissible supports need P_i and Q_i given as products of affine factors".into())
    })?;
    let n = h.n;
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (i, (pi, qi)) in fac.into_iter().enumerate() {
        p.push(pi.shift(gamma));
        let g: Vec<Rat> = gamma.iter().zip(unit(n, i)).map(|(a, b)| a + b).collect();
        q.push(qi.shift(&g));
    }
    Ok(Shifted { p, q })
}

/// Largest coordinate of a vertex of the arrangement, plus slack.
fn feature_radius(sh: &Shifted, n: usize) -> i64 {
    let mut planes: Vec<LinForm> = Vec::new();
    for i in 0..n {
        for f in sh.p[i].factors.iter().chain(&sh.q[i].factors) {
            for l in [f.clone(), f.shift(&unit(n, i).iter().map(|x| -x).collect::<Vec<_>>())] {
                if !planes.contains(&l) {
                    planes.push(l);
                }
            }
        }
    }
    let mut r = 0i64;
    for l in &planes {
        // distance of a single hyperplane from the origin along its normal
        let nrm: Rat = l.a.iter().map(|x| x.abs()).fold(Rat::zero(), |a, b| a.max(b));
        if !nrm.is_zero() {
            let v = (l.b.abs() / nrm).ceil().to_integer();
            r = r.max(i64::try_from(v).unwrap_or(i64::MAX / 4));
        }
    }
    for idx in subsets(planes.len(), n) {
        let a: Vec<Vec<Rat>> = idx.iter().map(|&k| planes[k].a.clone()).collect();
        if rank(&a, n) < n {
            continue;
        }
        let b: Vec<Rat> = idx.iter().map(|&k| -planes[k].b.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            for c in x {
                let v = c.abs().ceil().to_integer();
                r = r.max(i64::try_from(v).unwrap_or(i64::MAX / 4));
            }
        }
    }
    r
}

struct Grid {
    n: usize,
    r: i64,
    side: usize,
}

impl Grid {
    fn index(&self, s: &[i64]) -> Option<usize> {
        let mut k = 0usize;
        for &x in s {
            if x < -self.r || x > self.r {
                return None;
            }
            k = k * self.side + (x + self.r) as usize;
        }
        Some(k)
    }

    fn point(&self, mut k: usize) -> Vec<i64> {
        let mut s = vec![0; self.n];
        for j in (0..self.n).rev() {
            s[j] = (k % self.side) as i64 - self.r;
            k /= self.side;
        }
        s
    }

    fn len(&self) -> usize {
        self.side.pow(self.n as u32)
    }

    fn on_boundary(&self, s: &[i64]) -> bool {
        s.iter().any(|x| x.abs() == self.r)
    }
}

fn step(s: &[i64], i: usize, d: i64) -> Vec<i64> {
    let mut t = s.to_vec();
    t[i] += d;
    t
}

/// Connected lattice components of the points that can carry a solution.
fn components(sh: &Shifted, grid: &Grid) -> Vec<Vec<Vec<i64>>> {
    let n = grid.n;
    let len = grid.len();
    let linked = |t: &[i64], i: usize| !sh.p[i].vanishes_at(t) && !sh.q[i].vanishes_at(t);
    let mut forbidden: Vec<bool> = (0..len)
        .into_par_iter()
        .map(|k| {
            let t = grid.point(k);
            (0..n).any(|i| {
                if sh.q[i].vanishes_at(&t) {
                    return true;
                }
                let prev = step(&t, i, -1);
                sh.p[i].vanishes_at(&prev) && !sh.q[i].vanishes_at(&prev)
            })
        })
        .collect();
    let mut queue: VecDeque<usize> = (0..len).filter(|&k| forbidden[k]).collect();
    while let Some(k) = queue.pop_front() {
        let t = grid.point(k);
        for i in 0..n {
            let up = step(&t, i, 1);
            if linked(&t, i) {
                if let Some(u) = grid.index(&up) {
                    if !forbidden[u] {
                        forbidden[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            let down = step(&t, i, -1);
            if linked(&down, i) {
                if let Some(d) = grid.index(&down) {
                    if !forbidden[d] {
                        forbidden[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
    }
    let mut label = vec![usize::MAX; len];
    let mut comps = Vec::new();
    for start in 0..len {
        if forbidden[start] || label[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut pts = Vec::new();
        label[start] = id;
        let mut q = VecDeque::from([start]);
        while let Some(k) = q.pop_front() {
            let t = grid.point(k);
            for i in 0..n {
                for d in [-1, 1] {
                    if let Some(u) = grid.index(&step(&t, i, d)) {
                        if !forbidden[u] && label[u] == usize::MAX {
                            label[u] = id;
                            q.push_back(u);
                        }
                    }
                }
            }
            pts.push(t);
        }
        pts.sort();
        comps.push(pts);
    }
    comps
}

fn candidate_normals(sh: &Shifted, n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    for f in sh.p.iter().chain(&sh.q) {
        for l in &f.factors {
            let mut v = primitive(&l.a);
            if let Some(first) = v.iter().find(|&&x| x != 0) {
                if *first < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn count_region(grid: &Grid, cons: &[(Vec<i64>, i64, bool)]) -> usize {
    (0..grid.len())
        .into_par_iter()
        .filter(|&k| {
            let s = grid.point(k);
            cons.iter().all(|(a, b, ge)| {
                let v: i64 = a.iter().zip(&s).map(|(x, y)| x * y).sum();
                if *ge {
                    v >= *b
                } else {
                    v <= *b
                }
            })
        })
        .count()
}

/// Constraints cutting out `comp` inside the grid, coordinate bounds last
/// to be dropped.
fn describe(comp: &[Vec<i64>], normals: &[Vec<i64>], grid: &Grid) -> Result<Vec<(Vec<i64>, i64, bool)>> {
    let mut cons: Vec<(Vec<i64>, i64, bool)> = Vec::new();
    for a in normals {
        let vals = comp.iter().map(|s| (a.iter().zip(s).map(|(x, y)| x * y).sum::<i64>(), s));
        let mut lo: Option<(i64, bool)> = None;
        let mut hi: Option<(i64, bool)> = None;
        for (v, s) in vals {
            let inner = !grid.on_boundary(s);
            lo = Some(match lo {
                None => (v, inner),
                Some((l, _)) if v < l => (v, inner),
                Some((l, f)) if v == l => (l, f || inner),
                Some(x) => x,
            });
            hi = Some(match hi {
                None => (v, inner),
                Some((h, _)) if v > h => (v, inner),
                Some((h, f)) if v == h => (h, f || inner),
                Some(x) => x,
            });
        }
        if let Some((l, true)) = lo {
            cons.push((a.clone(), l, true));
        }
        if let Some((h, true)) = hi {
            cons.push((a.clone(), h, false));
        }
    }
    let target = comp.len();
    if count_region(grid, &cons) != target {
        return Err(Error::Numerical(
            "a support region is not cut out by the arrangement's hyperplanes inside the window".into(),
        ));
    }
    let is_coord = |a: &Vec<i64>| a.iter().filter(|&&x| x != 0).count() == 1;
    let mut order: Vec<usize> = (0..cons.len()).collect();
    order.sort_by_key(|&k| (!is_coord(&cons[k].0), k));
    let mut keep = vec![true; cons.len()];
    for k in order {
        keep[k] = false;
        let trial: Vec<_> = cons.iter().zip(&keep).filter(|(_, &on)| on).map(|(c, _)| c.clone()).collect();
        if count_region(grid, &trial) != target {
            keep[k] = true;
        }
    }
    Ok(cons.into_iter().zip(keep).filter(|(_, on)| *on).map(|(c, _)| c).collect())
}

/// Irreducible supports of solutions with exponents in `Z^n + gamma`.
///
/// `window` bounds the lattice box that is scanned; it is enlarged when the
/// arrangement has vertices farther out. Degenerate systems with infinitely
/// many supports are rejected.
pub fn admissible_supports(h: &HornSystem, gamma: &[Rat], window: i64) -> Result<Vec<SupportSpec>> {
    let n = h.n;
    if gamma.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: gamma.len(),
        });
    }
    if n > 3 {
        return Err(Error::Unsupported("admissible supports are enumerated for n <= 3".into()));
    }
    let sh = shifted(h, gamma)?;
    let margin = 3 + sh.p.iter().chain(&sh.q).map(|f| f.degree() as i64).max().unwrap_or(0);
    let r = window.max(feature_radius(&sh, n) + margin);
    // Two extra layers: a component living only there is a region that
    // repeats with no arrangement vertex near it.
    let outer = r + 2;
    let grid = Grid {
        n,
        r: outer,
        side: (2 * outer + 1) as usize,
    };
    let comps = components(&sh, &grid);
    if let Some(c) = comps.iter().find(|c| c.iter().all(|s| s.iter().any(|x| x.abs() > r))) {
        return Err(Error::Unsupported(format!(
            "infinitely many irreducible supports: regions keep appearing beyond every arrangement vertex \
             (e.g. at {:?}); typically P_i and Q_i share a factor",
            c[0]
        )));
    }
    let normals = candidate_normals(&sh, n);
    let mut out = Vec::new();
    for comp in comps {
        let cons = describe(&comp, &normals, &grid)?;
        let witness = comp
            .iter()
            .min_by_key(|s| (s.iter().map(|x| x.abs()).sum::<i64>(), (*s).clone()))
            .unwrap()
            .clone();
        let ineqs = cons
            .into_iter()
            .map(|(a, b, ge)| {
                let shift = dot_rat(&a, gamma);
                Inequality::new(a, Rat::from_integer(b.into()) + shift, if ge { Sense::Ge } else { Sense::Le })
            })
            .collect();
        out.push(SupportSpec::with_witness(gamma.to_vec(), ineqs, witness)?);
    }
    out.sort_by(|a, b| a.witness.cmp(&b.witness));
    Ok(out)
}

/// Brute-force re-check of the support conditions on every lattice point
/// of `S` in the box and every point one step outside. Returns the first
/// violation found.
pub fn recheck_support(h: &HornSystem, s: &SupportSpec, radius: i64) -> Result<Option<String>> {
    let sh = shifted(h, &s.gamma)?;
    let n = h.n;
    let inside: HashMap<Vec<i64>, bool> = box_points(n, radius + 1).into_iter().map(|p| {
        let c = s.contains(&p);
        (p, c)
    }).collect();
    let mem = |p: &[i64]| inside.get(p).copied().unwrap_or_else(|| s.contains(p));
    for p in box_points(n, radius) {
        let here = mem(&p);
        for i in 0..n {
            let up = step(&p, i, 1);
            let pz = sh.p[i].vanishes_at(&p);
            let qz = sh.q[i].vanishes_at(&p);
            match (here, mem(&up)) {
                (true, false) if !pz => return Ok(Some(format!("P_{} nonzero at exit point {:?}", i + 1, p))),
                (false, true) if !qz => return Ok(Some(format!("Q_{} nonzero at entry point {:?}", i + 1, p))),
                (true, true) if pz => return Ok(Some(format!("P_{} vanishes inside at {:?}", i + 1, p))),
                _ => {}
            }
            if here && qz {
                return Ok(Some(format!("Q_{} vanishes inside at {:?}", i + 1, p)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horn::catalog;
    use crate::horn::system::horn_from_ore_sato;

    #[test]
    fn pentagon_has_eight_supports() {
        let h = horn_from_ore_sato(&catalog::pentagon_coefficient()).unwrap();
        let sup = admissible_supports(&h, &[Rat::zero(), Rat::zero()], DEFAULT_WINDOW).unwrap();
        assert_eq!(sup.len(), 8);
        for s in &sup {
            assert_eq!(recheck_support(&h, s, 12).unwrap(), None);
        }
    }

    #[test]
    fn shared_factor_gives_infinitely_many_supports() {
        use crate::algebra::poly::{rat, ratio};
        use crate::horn::{GammaRow, OreSatoCoefficient};
        // Both P_i and Q_i vanish on s1 - s2 = 3: every lattice point of that
        // line is an isolated support.
        let phi = OreSatoCoefficient::gamma_ratio(
            2,
            vec![GammaRow::new(vec![-2, 2], rat(-5)), GammaRow::new(vec![1, -1], rat(3))],
            vec![GammaRow::new(vec![-2, 0], ratio(-3, 2)), GammaRow::new(vec![1, 1], rat(-1))],
        );
        let h = horn_from_ore_sato(&phi).unwrap();
        match admissible_supports(&h, &[Rat::zero(), Rat::zero()], 8) {
            Err(Error::Unsupported(m)) => assert!(m.contains("infinitely many")),
            other => panic!("{:?}", other.map(|v| v.len())),
        }
    }
}
