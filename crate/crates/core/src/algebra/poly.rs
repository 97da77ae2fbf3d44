use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex monomials with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic.
pub fn poly_arithmetic(a: &MultiPoly, b: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch {
            expected: a.nvars,
            got: b.nvars,
        });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, Rat)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Affine linear form `c0 + sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rat], c0: Rat) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, c0);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Vec<i32>> {
        self.terms.keys().map(|m| m.0.clone()).collect()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    /// Componentwise minimum exponent; zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out: Option<Vec<i32>> = None;
        for m in self.terms.keys() {
            out = Some(match out {
                None => m.0.clone(),
                Some(o) => o.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        out.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[i32]) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let e = m.0.iter().zip(exps).map(|(a, b)| a + b).collect();
                    (Monomial(e), v.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact partial derivative in variable `i` (0-based).
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                let mut ne = m.0.clone();
                ne[i] -= 1;
                out.add_term(Monomial(ne), c * rat(e as i64));
            }
        }
        out
    }

    /// Euler operator `x_i d/dx_i`.
    pub fn theta(&self, i: usize) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] != 0)
                .map(|(m, c)| (m.clone(), c * rat(m.0[i] as i64)))
                .collect(),
        }
    }

    /// Substitute every variable by a polynomial (all in a common ring).
    ///
    /// Negative exponents are only allowed when the image is a monomial.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = MultiPoly::zero(target);
        let mut cache: Vec<BTreeMap<i32, MultiPoly>> = vec![BTreeMap::new(); self.nvars];
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = if e > 0 {
                        images[i].pow(e as u32)
                    } else {
                        images[i].monomial_inverse()?.pow((-e) as u32)
                    };
                    cache[i].insert(e, p);
                }
                term = &term * &cache[i][&e];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Result<MultiPoly> {
        if !self.is_monomial() {
            return Err(Error::Invalid(
                "negative power of a non-monomial".to_string(),
            ));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Ok(MultiPoly::monomial(
            self.nvars,
            m.0.iter().map(|e| -e).collect(),
            c.recip(),
        ))
    }

    /// `p(x + d)`.
    pub fn shift(&self, d: &[Rat]) -> MultiPoly {
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                let mut v = MultiPoly::var(self.nvars, i);
                v.add_term(Monomial(vec![0; self.nvars]), d[i].clone());
                v
            })
            .collect();
        self.compose(&images).expect("shift of a Laurent polynomial with negative exponents")
    }

    /// Substitute `x_i = value`, keeping the variable count.
    pub fn eval_var(&self, i: usize, value: &Rat) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] = 0;
            out.add_term(Monomial(e), c * pow_rat(value, k));
        }
        out
    }

    /// Exact evaluation.
    ///
    /// # Panics
    /// When a negative exponent meets a zero coordinate.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e != 0 {
                    v *= pow_rat(xi, e);
                }
            }
            acc += v;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (xi, &e) in x.iter().zip(&m.0) {
                    v *= xi.powi(e);
                }
                v
            })
            .sum()
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                for (xi, &e) in x.iter().zip(&m.0) {
                    v *= xi.powi(e);
                }
                v
            })
            .sum()
    }

    /// Coefficients in variable `var`: `(lowest exponent, coefficient list)`.
    /// Entry `k` multiplies `var^(lo + k)` and does not involve `var`.
    pub fn as_univariate(&self, var: usize) -> (i32, Vec<MultiPoly>) {
        let lo = self.min_degree_in(var).unwrap_or(0);
        let hi = self.degree_in(var).unwrap_or(0);
        let mut out = vec![MultiPoly::zero(self.nvars); (hi - lo + 1) as usize];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] = 0;
            out[(k - lo) as usize].add_term(Monomial(e), c.clone());
        }
        (lo, out)
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: i64) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the terms whose exponents restricted to `vars` have degree `d`.
    pub fn homogeneous_part_in(&self, vars: &[usize], d: i64) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().map(|&i| m.0[i] as i64).sum::<i64>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Embed into a ring with `nvars` variables; variable `i` maps to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. One for the zero polynomial.
    pub fn content(&self) -> Rat {
        content_of(self.terms.values())
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Exact quotient in the Laurent ring, if the division is exact.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, d.nvars, "dimension mismatch");
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.is_monomial() {
            return Some(self * &d.monomial_inverse().ok()?);
        }
        let ms = self.min_exponents();
        let md = d.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|e| -e).collect::<Vec<_>>();
        let mut r = self.mul_monomial(&neg(&ms));
        let dd = d.mul_monomial(&neg(&md));
        let (ldm, ldc) = {
            let (m, c) = dd.leading().unwrap();
            (m.0.clone(), c.clone())
        };
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((lm, lc)) = r.leading() {
            if lm.0.iter().zip(&ldm).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<i32> = lm.0.iter().zip(&ldm).map(|(a, b)| a - b).collect();
            let c = lc / &ldc;
            let t = MultiPoly::monomial(self.nvars, e, c);
            r = &r - &(&t * &dd);
            q = &q + &t;
        }
        let back: Vec<i32> = ms.iter().zip(&md).map(|(a, b)| a - b).collect();
        Some(q.mul_monomial(&back))
    }

    /// Largest monomial dividing every term, divided out.
    pub fn strip_monomial(&self) -> (Vec<i32>, MultiPoly) {
        let m = self.min_exponents();
        let neg: Vec<i32> = m.iter().map(|e| -e).collect();
        (m, self.mul_monomial(&neg))
    }

    /// Render with the given variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let vars = monomial_text(&m.0, names);
            if vars.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&vars);
            } else {
                out.push_str(&format!("{}*{}", a, vars));
            }
        }
        out
    }
}

fn monomial_text(e: &[i32], names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].to_string()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{}", i)).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.to_string_with(&refs))
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn pow_rat(x: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Positive rational content of a coefficient list.
pub(crate) fn content_of<'a, I: Iterator<Item = &'a Rat>>(it: I) -> Rat {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    let mut any = false;
    for c in it {
        any = true;
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    if !any || g.is_zero() {
        return Rat::one();
    }
    Rat::new(g, l)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e: Vec<i32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let v = ca * cb;
                match acc.get_mut(&Monomial(e.clone())) {
                    Some(x) => *x += v,
                    None => {
                        acc.insert(Monomial(e), v);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let one = MultiPoly::one(1);
        let p = &(&one - &x(1, 0)) * &(&one + &x(1, 0));
        assert_eq!(p, &one - &x(1, 0).pow(2));
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = &x(2, 0) + &MultiPoly::constant(2, ratio(3, 4));
        assert_eq!(&p + &MultiPoly::zero(2), p);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let r = poly_arithmetic(&x(2, 0), &x(3, 0), ArithOp::Add);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn derivative_of_monomial() {
        let p = &x(2, 0).pow(2) * &x(2, 1);
        assert_eq!(p.derivative(0), (&x(2, 0) * &x(2, 1)).scale(&rat(2)));
        assert!(MultiPoly::constant(2, rat(5)).derivative(0).is_zero());
    }

    #[test]
    fn div_exact_laurent() {
        let a = &(&MultiPoly::one(2) - &x(2, 0)) * &x(2, 1).mul_monomial(&[-3, 0]);
        let b = &MultiPoly::one(2) - &x(2, 0);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, x(2, 1).mul_monomial(&[-3, 0]));
        assert!(b.div_exact(&(&b + &x(2, 1))).is_none());
    }

    #[test]
    fn shift_is_exact() {
        let p = &x(1, 0).pow(2) - &MultiPoly::one(1);
        let q = p.shift(&[rat(1)]);
        assert_eq!(q, &x(1, 0).pow(2) + &x(1, 0).scale(&rat(2)));
    }

    #[test]
    fn printing_is_grlex_descending() {
        let p = &(&x(2, 0).pow(2) - &x(2, 1).scale(&ratio(3, 4))) + &MultiPoly::constant(2, rat(-1));
        assert_eq!(p.to_string(), "x1^2 - 3/4*x2 - 1");
    }
}
