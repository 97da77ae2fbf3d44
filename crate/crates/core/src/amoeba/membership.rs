//! Pointwise amoeba membership and the order map.
//!
//! Layers, cheapest first:
//! 1. lopsidedness: a dominant term certifies the complement and gives
//!    the order directly;
//! 2. slice sweep: over a grid of angles of the transverse coordinates,
//!    count roots of the slice polynomial inside the circle. If the count
//!    changes between neighbouring angles, a root crosses the circle in
//!    between; bisection pins the crossing and yields an explicit torus
//!    zero;
//! 3. winding consistency over random fibers. Disagreement between two
//!    fibers is again bisected towards a torus zero.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::torus::{Slice, Terms, UnitRoots};
use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::geometry::{newton_polytope, LatticePolytope};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipParams {
    /// Angle samples per transverse coordinate in the slice sweep.
    pub n_angle: usize,
    /// Samples on each circle for argument tracking.
    pub n_circle: usize,
    pub n_fiber: usize,
    /// Accepted `|log|x_j| - t_j|` for a witness zero.
    pub tol: f64,
    /// Total angle samples of the confirmation sweeps, one per slice
    /// direction, run before accepting a winding order that is not a vertex
    /// of the Newton polytope.
    #[serde(default = "default_refine")]
    pub refine_samples: usize,
}

fn default_refine() -> usize {
    16384
}

impl Default for MembershipParams {
    fn default() -> Self {
        MembershipParams {
            n_angle: 64,
            n_circle: 512,
            n_fiber: 5,
            tol: 1e-3,
            refine_samples: default_refine(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Lopsided,
    Winding,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Membership {
    Outside { order: Vec<i64>, certificate: Certificate },
    /// `witness` is a zero of `f` with `|log|x| - t| <= tol`.
    Inside { witness: Vec<(f64, f64)> },
    Unknown { reason: String },
}

impl Membership {
    pub fn order(&self) -> Option<&[i64]> {
        match self {
            Membership::Outside { order, .. } => Some(order),
            _ => None,
        }
    }

    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Precomputed data for repeated membership queries on one polynomial.
pub(crate) struct Oracle {
    terms: Terms,
    params: MembershipParams,
    table: UnitRoots,
    fine: UnitRoots,
    /// Variable the slices are taken in.
    slice_var: Option<usize>,
    newton: Option<LatticePolytope>,
}

impl Oracle {
    pub fn new(f: &MultiPoly, params: MembershipParams) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Invalid("membership needs a nonzero polynomial".into()));
        }
        if params.n_angle < 2 || params.n_circle < 8 || params.n_fiber < 1 {
            return Err(Error::InvalidParameter(format!("membership parameters too small: {:?}", params)));
        }
        let terms = Terms::new(f);
        let slice_var = (0..terms.n).find(|&j| {
            let (lo, hi) = terms.span(j);
            hi > lo
        });
        let per_axis = match terms.n {
            0 | 1 => params.n_angle,
            n => (params.refine_samples as f64).powf(1.0 / (n - 1) as f64).floor() as usize,
        };
        Ok(Oracle {
            table: UnitRoots::new(params.n_angle),
            fine: UnitRoots::new(per_axis.max(2)),
            terms,
            params,
            slice_var,
            newton: newton_polytope(f).ok(),
        })
    }

    pub fn classify(&self, t: &[f64], rng: &mut ChaCha8Rng) -> Membership {
        if let Some(k) = self.terms.lopsided(t) {
            return Membership::Outside {
                order: self.terms.exps[k].iter().map(|&e| e as i64).collect(),
                certificate: Certificate::Lopsided,
            };
        }
        let Some(j) = self.slice_var else {
            // a monomial is always lopsided; a constant slice never vanishes
            return Membership::Unknown {
                reason: "no variable to slice in".into(),
            };
        };
        let weights = self.terms.weights(t);
        if let Some(w) = self.sweep(t, &weights, j, &self.table) {
            return Membership::Inside { witness: w };
        }
        match self.fibers(&weights, rng) {
            Ok(order) => {
                let vertex = self.newton.as_ref().is_some_and(|p| p.is_vertex(&order));
                if !vertex {
                    // every slice direction: a thin crossing set in one is often wide in another
                    for v in 0..self.terms.n {
                        let (lo, hi) = self.terms.span(v);
                        if hi > lo {
                            if let Some(w) = self.sweep(t, &weights, v, &self.fine) {
                                return Membership::Inside { witness: w };
                            }
                        }
                    }
                    // a root touching the circle without crossing leaves every count unchanged
                    for v in 0..self.terms.n {
                        let (lo, hi) = self.terms.span(v);
                        if hi > lo {
                            if let Some(w) = self.tangency(t, &weights, v) {
                                return Membership::Inside { witness: w };
                            }
                        }
                    }
                }
                Membership::Outside {
                    order,
                    certificate: Certificate::Winding,
                }
            }
            Err(FiberFailure::Disagree { a, b, var }) => match self.bisect(t, &weights, &a, &b, var) {
                Some(w) => Membership::Inside { witness: w },
                None => Membership::Unknown {
                    reason: "fibers disagree but no torus zero was pinned".into(),
                },
            },
            Err(FiberFailure::Unreliable) => Membership::Unknown {
                reason: "argument tracking unreliable: point likely inside or too close to the amoeba".into(),
            },
        }
    }

    /// Slice sweep over the transverse angle grid.
    fn sweep(&self, t: &[f64], weights: &[f64], j: usize, table: &UnitRoots) -> Option<Vec<(f64, f64)>> {
        let n = self.terms.n;
        let na = table.n;
        let trans: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let total = na.pow(trans.len() as u32);
        let mut counts: Vec<Option<usize>> = Vec::with_capacity(total);
        let mut idx = vec![0usize; n];
        for lin in 0..total {
            let mut r = lin;
            for &i in &trans {
                idx[i] = r % na;
                r /= na;
            }
            let s = self.terms.slice_on_grid(weights, &idx, j, table);
            let c = s.zeros_inside();
            if c.is_none() {
                let th: Vec<f64> = idx.iter().map(|&k| table.angle(k)).collect();
                if let Some(w) = self.witness_at(t, weights, &th, j) {
                    return Some(w);
                }
            }
            counts.push(c);
        }
        // neighbours along each transverse axis, cyclically
        let mut stride = 1;
        for &i in &trans {
            for lin in 0..total {
                let k = (lin / stride) % na;
                let nb = lin - k * stride + ((k + 1) % na) * stride;
                if let (Some(a), Some(b)) = (counts[lin], counts[nb]) {
                    if a != b {
                        let ta = grid_angles(table, n, lin, &trans, j);
                        let mut tb = ta.clone();
                        tb[i] += 2.0 * PI / na as f64;
                        if let Some(w) = self.bisect(t, weights, &ta, &tb, j) {
                            return Some(w);
                        }
                    }
                }
            }
            stride *= na;
        }
        None
    }

    /// `min |log |r||` over the roots `r` of the slice at `th`.
    fn circle_gap(&self, weights: &[f64], th: &[f64], j: usize) -> f64 {
        let s = self.slice_at(weights, th, j);
        if s.vanishes() {
            return 0.0;
        }
        s.roots()
            .into_iter()
            .filter(|r| r.norm() > 0.0)
            .map(|r| r.norm().ln().abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimize the gap between slice roots and the unit circle: coarse
    /// scan over the fine grid, then a compass search around the best angle.
    fn tangency(&self, t: &[f64], weights: &[f64], j: usize) -> Option<Vec<(f64, f64)>> {
        let n = self.terms.n;
        let table = &self.fine;
        let na = table.n;
        let trans: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let total = na.pow(trans.len() as u32);
        let (mut best, mut th) = (f64::INFINITY, vec![0.0; n]);
        for lin in 0..total {
            let cand = grid_angles(table, n, lin, &trans, j);
            let g = self.circle_gap(weights, &cand, j);
            if g < best {
                best = g;
                th = cand;
            }
        }
        let mut step = 2.0 * PI / na as f64;
        while step > 1e-12 && best > 0.0 {
            let mut moved = false;
            for &i in &trans {
                for sign in [1.0, -1.0] {
                    let mut cand = th.clone();
                    cand[i] += sign * step;
                    let g = self.circle_gap(weights, &cand, j);
                    if g < best {
                        best = g;
                        th = cand;
                        moved = true;
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        if best > self.params.tol {
            return None;
        }
        self.witness_at(t, weights, &th, j)
    }

    fn slice_at(&self, weights: &[f64], th: &[f64], j: usize) -> Slice {
        self.terms.slice(weights, th, j)
    }

    /// Zero count inside the circle along the segment `a -> b` of angle
    /// vectors changes; bisect to the crossing and read off the root there.
    fn bisect(&self, t: &[f64], weights: &[f64], a: &[f64], b: &[f64], j: usize) -> Option<Vec<(f64, f64)>> {
        let at = |s: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + s * (y - x)).collect() };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let c_lo = self.slice_at(weights, a, j).zeros_inside();
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            match self.slice_at(weights, &at(mid), j).zeros_inside() {
                None => {
                    lo = mid;
                    hi = mid;
                    break;
                }
                Some(c) if Some(c) == c_lo => lo = mid,
                Some(_) => hi = mid,
            }
        }
        for s in [0.5 * (lo + hi), lo, hi] {
            if let Some(w) = self.witness_at(t, weights, &at(s), j) {
                return Some(w);
            }
        }
        None
    }

    /// A root of the slice at angles `th` with modulus within `tol` of the circle.
    fn witness_at(&self, t: &[f64], weights: &[f64], th: &[f64], j: usize) -> Option<Vec<(f64, f64)>> {
        let s = self.slice_at(weights, th, j);
        if s.vanishes() {
            return Some(self.lift(t, th, j, Complex64::new(1.0, 0.0)));
        }
        let r = s
            .roots()
            .into_iter()
            .filter(|r| r.norm() > 0.0)
            .min_by(|x, y| x.norm().ln().abs().total_cmp(&y.norm().ln().abs()))?;
        if r.norm().ln().abs() > self.params.tol {
            return None;
        }
        Some(self.lift(t, th, j, r))
    }

    fn lift(&self, t: &[f64], th: &[f64], j: usize, r: Complex64) -> Vec<(f64, f64)> {
        (0..self.terms.n)
            .map(|i| {
                let z = if i == j {
                    r * t[i].exp()
                } else {
                    Complex64::from_polar(t[i].exp(), th[i])
                };
                (z.re, z.im)
            })
            .collect()
    }

    fn fibers(&self, weights: &[f64], rng: &mut ChaCha8Rng) -> std::result::Result<Vec<i64>, FiberFailure> {
        let n = self.terms.n;
        let mut first: Option<(Vec<f64>, Vec<i64>)> = None;
        for _ in 0..self.params.n_fiber {
            let th: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            let mut order = Vec::with_capacity(n);
            for j in 0..n {
                let w = self
                    .slice_at(weights, &th, j)
                    .winding(self.params.n_circle)
                    .ok_or(FiberFailure::Unreliable)?;
                order.push(w);
            }
            match &first {
                None => first = Some((th, order)),
                Some((th0, o0)) => {
                    if let Some(var) = (0..n).find(|&j| o0[j] != order[j]) {
                        return Err(FiberFailure::Disagree {
                            a: th0.clone(),
                            b: th,
                            var,
                        });
                    }
                }
            }
        }
        Ok(first.map(|f| f.1).unwrap_or_default())
    }

    /// Winding orders along every coordinate, requiring agreement over all fibers.
    pub fn order(&self, t: &[f64], rng: &mut ChaCha8Rng) -> Result<Vec<i64>> {
        let weights = self.terms.weights(t);
        self.fibers(&weights, rng)
            .map_err(|_| Error::Numerical("point likely inside or too close to the amoeba".into()))
    }
}

fn grid_angles(table: &UnitRoots, n: usize, lin: usize, trans: &[usize], j: usize) -> Vec<f64> {
    let mut th = vec![0.0; n];
    let mut r = lin;
    for &i in trans {
        th[i] = table.angle(r % table.n);
        r /= table.n;
    }
    th[j] = 0.0;
    th
}

enum FiberFailure {
    Unreliable,
    Disagree { a: Vec<f64>, b: Vec<f64>, var: usize },
}

fn check_point(f: &MultiPoly, t: &[f64]) -> Result<()> {
    if t.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: t.len(),
        });
    }
    if t.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite point".into()));
    }
    Ok(())
}

/// Classify the point `t` of `R^n` relative to the amoeba of `f`.
pub fn membership(f: &MultiPoly, t: &[f64], params: &MembershipParams, seed: u64) -> Result<Membership> {
    check_point(f, t)?;
    let o = Oracle::new(f, *params)?;
    Ok(o.classify(t, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Winding numbers of `f` along the coordinate circles over `t`.
pub fn order_map(f: &MultiPoly, t: &[f64], params: &MembershipParams, seed: u64) -> Result<Vec<i64>> {
    check_point(f, t)?;
    let o = Oracle::new(f, *params)?;
    o.order(t, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_default;

    fn line() -> MultiPoly {
        parse_default("1 - x1 - x2", 2).unwrap()
    }

    fn p() -> MembershipParams {
        MembershipParams::default()
    }

    #[test]
    fn line_points() {
        let f = line();
        let m = membership(&f, &[-3.0, -3.0], &p(), 0).unwrap();
        assert_eq!(
            m,
            Membership::Outside {
                order: vec![0, 0],
                certificate: Certificate::Lopsided
            }
        );
        let m = membership(&f, &[1.0, -3.0], &p(), 0).unwrap();
        assert_eq!(m.order(), Some(&[1, 0][..]));
        match membership(&f, &[0.0, 0.0], &p(), 0).unwrap() {
            Membership::Inside { witness } => {
                let x: Vec<Complex64> = witness.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
                assert!(f.eval_complex(&x).norm() < 1e-6);
                // the zeros on the unit torus are (e^{i pi/3}, e^{-i pi/3}) and its conjugate
                assert!((x[0].arg().abs() - PI / 3.0).abs() < 1e-3);
                assert!((x[0].arg() + x[1].arg()).abs() < 1e-3);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn winding_in_each_component() {
        let f = line();
        assert_eq!(order_map(&f, &[-4.0, -4.0], &p(), 1).unwrap(), vec![0, 0]);
        assert_eq!(order_map(&f, &[4.0, -1.0], &p(), 1).unwrap(), vec![1, 0]);
        assert_eq!(order_map(&f, &[-1.0, 4.0], &p(), 1).unwrap(), vec![0, 1]);
        // non-lopsided but outside: 1 < e^0.3 + e^-3 ... use a point near the wall
        let m = membership(&f, &[0.8, 0.0], &p(), 3).unwrap();
        assert_eq!(m.order(), Some(&[1, 0][..]));
    }

    #[test]
    fn monomial_order_is_its_exponent() {
        let f = parse_default("x1^3*x2^5", 2).unwrap();
        for t in [[0.0, 0.0], [-5.0, 2.0], [3.0, 3.0]] {
            assert_eq!(order_map(&f, &t, &p(), 7).unwrap(), vec![3, 5]);
            assert_eq!(membership(&f, &t, &p(), 7).unwrap().order(), Some(&[3, 5][..]));
        }
    }

    #[test]
    fn inside_witnesses_are_zeros() {
        let f = parse_default("(1 - x1)*(1 - x2)*(1 - x1 - x2)", 2).unwrap();
        for t in [[0.0, -2.0], [-1.5, 0.0], [0.05, 0.02]] {
            match membership(&f, &t, &p(), 11).unwrap() {
                Membership::Inside { witness } => {
                    let x: Vec<Complex64> = witness.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
                    assert!(f.eval_complex(&x).norm() < 1e-6, "{:?}", t);
                    for (xi, ti) in x.iter().zip(&t) {
                        assert!((xi.norm().ln() - ti).abs() <= 1e-3);
                    }
                }
                other => panic!("{:?} at {:?}", other, t),
            }
        }
    }

    #[test]
    fn tangential_zero_is_found() {
        // image of the real singular point x1 = x2 = -27: a root touches the
        // circle at a single angle without changing any zero count
        let f = parse_default(
            "x1^2*x2^2 + 64*x1^3 - 24*x1^2*x2 - 24*x1*x2^2 + 64*x2^3 - 1296*x1^2 + 4698*x1*x2 \
             - 1296*x2^2 + 8748*x1 + 8748*x2 - 19683",
            2,
        )
        .unwrap();
        let t = [27f64.ln() + 1e-7, 27f64.ln() + 1e-7];
        let m = membership(&f, &t, &p(), 0).unwrap();
        assert!(m.is_inside(), "{:?}", m);
    }
}
