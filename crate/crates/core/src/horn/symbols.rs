//! Principal symbols `H_i(x, z)` and their resultant in the plane.

use super::system::HornSystem;
use crate::algebra::resultant::sylvester_resultant;
use crate::algebra::MultiPoly;
use crate::error::{Error, Result};

/// Polynomials in `x1..xn, z1..zn` (in that order), homogeneous in `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSet {
    pub n: usize,
    pub h: Vec<MultiPoly>,
}

impl SymbolSet {
    pub fn names(&self) -> Vec<String> {
        (1..=self.n)
            .map(|i| format!("x{}", i))
            .chain((1..=self.n).map(|i| format!("z{}", i)))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        let names = self.names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        self.h.iter().map(|p| p.to_string_with(&refs)).collect()
    }

    pub fn z_degree(&self, i: usize) -> i64 {
        let zs: Vec<usize> = (self.n..2 * self.n).collect();
        self.h[i]
            .terms()
            .map(|(m, _)| zs.iter().map(|&k| m.0[k] as i64).sum::<i64>())
            .max()
            .unwrap_or(0)
    }
}

/// `H_i = x_i P_i^top(x z) - Q_i^top(x z)`.
pub fn principal_symbols(h: &HornSystem) -> Result<SymbolSet> {
    if !h.is_nonconfluent() {
        return Err(Error::Invalid(
            "principal symbols need deg P_i = deg Q_i for every equation".into(),
        ));
    }
    let n = h.n;
    let images: Vec<MultiPoly> = (0..n)
        .map(|j| &MultiPoly::var(2 * n, j) * &MultiPoly::var(2 * n, n + j))
        .collect();
    let mut out = Vec::new();
    for (i, e) in h.equations.iter().enumerate() {
        let m = e.p.poly.total_degree().unwrap_or(0);
        let p_top = e.p.poly.homogeneous_part(m).compose(&images)?;
        let q_top = e.q.poly.homogeneous_part(m).compose(&images)?;
        out.push(&(&MultiPoly::var(2 * n, i) * &p_top) - &q_top);
    }
    Ok(SymbolSet { n, h: out })
}

/// Coefficients of a binary form in `z1, z2`, highest power of `z1` first.
fn binary_coefficients(p: &MultiPoly, deg: i64) -> Result<Vec<MultiPoly>> {
    let mut out = vec![MultiPoly::zero(2); deg as usize + 1];
    for (m, c) in p.terms() {
        let (a, b) = (m.0[2] as i64, m.0[3] as i64);
        if a < 0 || b < 0 || a + b != deg {
            return Err(Error::Invalid(format!("'{}' is not a binary form of degree {} in z", p, deg)));
        }
        let x = MultiPoly::monomial(2, vec![m.0[0], m.0[1]], c.clone());
        let k = (deg - a) as usize;
        out[k] = &out[k] + &x;
    }
    Ok(out)
}

/// Classical resultant of the two binary forms `H_1, H_2` in `z`.
pub fn symbol_resultant(s: &SymbolSet) -> Result<MultiPoly> {
    if s.n != 2 {
        return Err(Error::Unsupported(format!(
            "symbol resultant is implemented for two variables only (got {})",
            s.n
        )));
    }
    let d1 = s.z_degree(0);
    let d2 = s.z_degree(1);
    if d1 == 0 || d2 == 0 {
        return Err(Error::Invalid("symbols of degree zero in z".into()));
    }
    let a = binary_coefficients(&s.h[0], d1)?;
    let b = binary_coefficients(&s.h[1], d2)?;
    Ok(sylvester_resultant(&a, &b, 2))
}
