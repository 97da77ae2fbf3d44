//! Restrictions of a Laurent polynomial to one coordinate circle of the
//! torus `|x_i| = e^{t_i}`, with the remaining coordinates fixed.
//!
//! Every slice is rescaled so that the circle becomes `|w| = 1` and the
//! largest coefficient has modulus about one; neither change moves roots
//! across the circle or alters winding numbers.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::poly::rat_to_f64;
use crate::algebra::MultiPoly;

#[derive(Clone, Debug)]
pub(crate) struct Terms {
    pub n: usize,
    pub exps: Vec<Vec<i32>>,
    pub log_abs: Vec<f64>,
    /// Coefficient phase: `0` or `pi`.
    pub arg: Vec<f64>,
}

impl Terms {
    pub fn new(f: &MultiPoly) -> Self {
        let mut exps = Vec::new();
        let mut log_abs = Vec::new();
        let mut arg = Vec::new();
        for (m, c) in f.terms() {
            let v = rat_to_f64(c);
            exps.push(m.0.clone());
            log_abs.push(v.abs().ln());
            arg.push(if v < 0.0 { PI } else { 0.0 });
        }
        Terms {
            n: f.nvars(),
            exps,
            log_abs,
            arg,
        }
    }

    /// `log |c_k x^alpha_k|` on the torus over `t`.
    pub fn log_moduli(&self, t: &[f64]) -> Vec<f64> {
        self.exps
            .iter()
            .zip(&self.log_abs)
            .map(|(e, l)| l + e.iter().zip(t).map(|(a, b)| *a as f64 * b).sum::<f64>())
            .collect()
    }

    /// The term whose modulus exceeds the sum of all the others, if any.
    pub fn lopsided(&self, t: &[f64]) -> Option<usize> {
        let l = self.log_moduli(t);
        let (k, m) = l
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let rest: f64 = l
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, v)| (v - m).exp())
            .sum();
        (rest < 1.0 - 1e-12).then_some(k)
    }

    /// Exponent range of variable `j`.
    pub fn span(&self, j: usize) -> (i32, i32) {
        let lo = self.exps.iter().map(|e| e[j]).min().unwrap_or(0);
        let hi = self.exps.iter().map(|e| e[j]).max().unwrap_or(0);
        (lo, hi)
    }

    /// Normalized moduli `|c_k x^alpha_k| / max`.
    pub fn weights(&self, t: &[f64]) -> Vec<f64> {
        let l = self.log_moduli(t);
        let m = l.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        l.iter().map(|v| (v - m).exp()).collect()
    }

    /// Slice in variable `j` with the other coordinates at angles `theta`
    /// (`theta[j]` is ignored).
    pub fn slice(&self, weights: &[f64], theta: &[f64], j: usize) -> Slice {
        let (lo, hi) = self.span(j);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (k, e) in self.exps.iter().enumerate() {
            let mut ph = self.arg[k];
            for (i, (&a, th)) in e.iter().zip(theta).enumerate() {
                if i != j {
                    ph += a as f64 * th;
                }
            }
            coeffs[(e[j] - lo) as usize] += Complex64::from_polar(weights[k], ph);
        }
        Slice {
            low: lo,
            coeffs,
            mass: weights.iter().sum(),
        }
    }

    /// As [`Terms::slice`], with angles `2 pi idx_i / N` taken from a table
    /// of `N`-th roots of unity.
    pub fn slice_on_grid(&self, weights: &[f64], idx: &[usize], j: usize, table: &UnitRoots) -> Slice {
        let (lo, hi) = self.span(j);
        let nn = table.n as i64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (k, e) in self.exps.iter().enumerate() {
            let mut p: i64 = 0;
            for (i, &a) in e.iter().enumerate() {
                if i != j {
                    p += a as i64 * idx[i] as i64;
                }
            }
            let mut c = table.roots[p.rem_euclid(nn) as usize] * weights[k];
            if self.arg[k] != 0.0 {
                c = -c;
            }
            coeffs[(e[j] - lo) as usize] += c;
        }
        Slice {
            low: lo,
            coeffs,
            mass: weights.iter().sum(),
        }
    }
}

pub(crate) struct UnitRoots {
    pub n: usize,
    pub roots: Vec<Complex64>,
}

impl UnitRoots {
    pub fn new(n: usize) -> Self {
        let roots = (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
        UnitRoots { n, roots }
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.n as f64
    }
}

/// `w^low * sum_k coeffs[k] w^k`.
#[derive(Clone, Debug)]
pub(crate) struct Slice {
    pub low: i32,
    pub coeffs: Vec<Complex64>,
    /// Sum of the term moduli before cancellation.
    pub mass: f64,
}

const REL_EPS: f64 = 1e-13;

impl Slice {
    fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The slice vanishes identically up to rounding.
    pub fn vanishes(&self) -> bool {
        self.scale() <= 1e-10 * self.mass
    }

    /// Polynomial part with negligible outer coefficients removed, and the
    /// number of removed low-order coefficients (roots at the origin).
    fn trimmed(&self) -> (usize, Vec<Complex64>) {
        let tiny = REL_EPS * self.scale();
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().unwrap().norm() <= tiny {
            c.pop();
        }
        let zeros = c.iter().take_while(|z| z.norm() <= tiny).count().min(c.len() - 1);
        (zeros, c.split_off(zeros))
    }

    /// Zeros of the polynomial part in `|w| < 1`, counted with
    /// multiplicity, by the Schur-Cohn recursion; singular steps (zeros
    /// symmetric about the circle) fall back to companion eigenvalues.
    /// `None` when a zero lies on or numerically near the circle.
    pub fn zeros_inside(&self) -> Option<usize> {
        if self.vanishes() {
            return None;
        }
        let (z0, p) = self.trimmed();
        match schur_cohn(p.clone()) {
            Some(k) => Some(k + z0),
            None => {
                let roots = poly_roots(&p);
                if roots.iter().any(|r| (r.norm() - 1.0).abs() < 1e-9) {
                    return None;
                }
                Some(z0 + roots.iter().filter(|r| r.norm() < 1.0).count())
            }
        }
    }

    /// Winding number of `w -> slice(w)` around `0` along `|w| = 1`, by
    /// continuous argument tracking over `samples` points. `None` when the
    /// curve passes too close to `0` or a step turns by more than `pi/2`.
    pub fn winding(&self, samples: usize) -> Option<i64> {
        if self.vanishes() {
            return None;
        }
        let tiny = 1e-12 * self.coeffs.iter().map(|c| c.norm()).sum::<f64>();
        let mut total = 0.0;
        let mut prev = self.eval_poly(Complex64::new(1.0, 0.0));
        if prev.norm() <= tiny {
            return None;
        }
        for m in 1..=samples {
            let w = Complex64::from_polar(1.0, 2.0 * PI * m as f64 / samples as f64);
            let v = self.eval_poly(w);
            if v.norm() <= tiny {
                return None;
            }
            let d = (v * prev.conj()).arg();
            if d.abs() > PI / 2.0 {
                return None;
            }
            total += d;
            prev = v;
        }
        let turns = total / (2.0 * PI);
        let k = turns.round();
        ((turns - k).abs() < 1e-6).then_some(k as i64 + self.low as i64)
    }

    fn eval_poly(&self, w: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
    }

    /// Nonzero roots of the polynomial part.
    pub fn roots(&self) -> Vec<Complex64> {
        let (_, p) = self.trimmed();
        poly_roots(&p)
    }
}

fn schur_cohn(mut p: Vec<Complex64>) -> Option<usize> {
    // inside(p) = inside(T p) if |a_0| > |a_d|, else d - inside(T p)
    let mut count: usize = 0;
    let mut flip = false;
    loop {
        let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return None;
        }
        while p.len() > 1 && p.last().unwrap().norm() <= REL_EPS * scale {
            p.pop();
        }
        let mut at_zero = 0;
        while p.len() > 1 && p[0].norm() <= REL_EPS * scale {
            p.remove(0);
            at_zero += 1;
        }
        let d = p.len() - 1;
        // zeros at the origin are inside; under a flip they count against d
        if flip {
            count = count.checked_sub(at_zero)?;
        } else {
            count += at_zero;
        }
        if d == 0 {
            return Some(count);
        }
        let (a0, ad) = (p[0], p[d]);
        let delta = a0.norm_sqr() - ad.norm_sqr();
        if delta.abs() <= 1e-9 * (a0.norm_sqr() + ad.norm_sqr()) {
            return None;
        }
        let q: Vec<Complex64> = (0..d).map(|k| a0.conj() * p[k] - ad * p[d - k].conj()).collect();
        if delta < 0.0 {
            // inside(p) = d - inside(q)
            if flip {
                count = count.checked_sub(d)?;
            } else {
                count += d;
            }
            flip = !flip;
        }
        p = q;
    }
}

/// Roots of `sum_k a_k w^k` (with `a_0 != 0`) as companion eigenvalues.
pub(crate) fn poly_roots(a: &[Complex64]) -> Vec<Complex64> {
    let d = a.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lead = a[d];
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -a[i] / lead;
    }
    m.schur().eigenvalues().map(|v| v.iter().cloned().collect()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_default;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn slice(coeffs: Vec<Complex64>) -> Slice {
        let mass = coeffs.iter().map(|c| c.norm()).sum();
        Slice { low: 0, coeffs, mass }
    }

    #[test]
    fn schur_cohn_counts_against_roots() {
        // (w - 0.5)(w - 2)(w + 0.3i) expanded
        let r = [c(0.5, 0.0), c(2.0, 0.0), c(0.0, -0.3)];
        let mut p = vec![c(1.0, 0.0)];
        for z in r {
            let mut q = vec![c(0.0, 0.0); p.len() + 1];
            for (k, a) in p.iter().enumerate() {
                q[k + 1] += a;
                q[k] -= a * z;
            }
            p = q;
        }
        let s = slice(p);
        assert_eq!(s.zeros_inside(), Some(2));
        assert_eq!(s.winding(512), Some(2));
        let mut roots = s.roots();
        roots.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        assert!((roots[0] - c(0.0, -0.3)).norm() < 1e-9);
        assert!((roots[2] - c(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn root_on_circle_is_degenerate() {
        assert_eq!(slice(vec![c(-1.0, 0.0), c(1.0, 0.0)]).zeros_inside(), None);
        // (w - 2)(w - 1/2) is singular for Schur-Cohn but not on the circle
        assert_eq!(slice(vec![c(1.0, 0.0), c(-2.5, 0.0), c(1.0, 0.0)]).zeros_inside(), Some(1));
        assert_eq!(slice(vec![c(-1.0, 0.0), c(1.0, 0.0)]).winding(64), None);
        // w^2 at the origin counts twice
        assert_eq!(slice(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).zeros_inside(), Some(2));
    }

    #[test]
    fn lopsided_line() {
        let t = Terms::new(&parse_default("1 - x1 - x2", 2).unwrap());
        let k = t.lopsided(&[-3.0, -3.0]).unwrap();
        assert_eq!(t.exps[k], vec![0, 0]);
        let k = t.lopsided(&[1.0, -3.0]).unwrap();
        assert_eq!(t.exps[k], vec![1, 0]);
        assert!(t.lopsided(&[0.0, 0.0]).is_none());
    }

    #[test]
    fn grid_slice_matches_direct_slice() {
        let f = parse_default("1 - 3*x1*x2^2 + x2^3 - 2*x1^2", 2).unwrap();
        let t = Terms::new(&f);
        let w = t.weights(&[0.2, -0.1]);
        let table = UnitRoots::new(64);
        let a = t.slice_on_grid(&w, &[0, 5], 0, &table);
        let b = t.slice(&w, &[0.0, table.angle(5)], 0);
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
