use num_traits::{Signed, Zero};

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination over the Laurent ring.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut negate = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sylvester resultant of two coefficient lists given highest degree first.
///
/// The rows of `a` occupy the top of the matrix. Leading zeros are allowed,
/// which gives the resultant of binary forms of the stated degrees.
pub fn sylvester_resultant(a: &[MultiPoly], b: &[MultiPoly], nvars: usize) -> MultiPoly {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let zero = MultiPoly::zero(nvars);
    let mut mat = vec![vec![zero; size]; size];
    for r in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat, nvars)
}

fn descending(p: &MultiPoly, var: usize) -> Result<Vec<MultiPoly>> {
    if p.is_zero() {
        return Err(Error::Invalid("zero polynomial in resultant".into()));
    }
    let (lo, mut coeffs) = p.as_univariate(var);
    if lo < 0 {
        return Err(Error::Invalid(format!(
            "negative exponent in the eliminated variable (index {})",
            var
        )));
    }
    let mut full = vec![MultiPoly::zero(p.nvars()); lo as usize];
    full.append(&mut coeffs);
    full.reverse();
    Ok(full)
}

/// `Res_var(f, g)` via the Sylvester matrix with `f` on top.
pub fn univariate_resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.nvars() != g.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: g.nvars(),
        });
    }
    if var >= f.nvars() {
        return Err(Error::Invalid(format!("variable index {} out of range", var)));
    }
    let a = descending(f, var)?;
    let b = descending(g, var)?;
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Invalid(
            "resultant needs positive degree in the eliminated variable".into(),
        ));
    }
    Ok(sylvester_resultant(&a, &b, f.nvars()))
}

/// `Res_var(f, df/dvar)`, signed so the constant term is negative.
pub fn discriminant(f: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if var >= f.nvars() {
        return Err(Error::Invalid(format!("variable index {} out of range", var)));
    }
    match f.degree_in(var) {
        Some(d) if d >= 2 => {}
        _ => return Err(Error::Invalid("discriminant needs degree at least 2".into())),
    }
    let r = univariate_resultant(f, &f.derivative(var), var)?;
    if r.constant_term().is_positive() {
        Ok(-r)
    } else {
        Ok(r)
    }
}

/// Resultant with the largest monomial factor removed.
pub fn essential_resultant(r: &MultiPoly) -> MultiPoly {
    if r.is_zero() {
        return r.clone();
    }
    r.strip_monomial().1
}

/// Drop the eliminated variable from the ring.
pub fn drop_var(p: &MultiPoly, var: usize) -> MultiPoly {
    let n = p.nvars();
    let keep: Vec<usize> = (0..n).filter(|&i| i != var).collect();
    let mut out = MultiPoly::zero(n - 1);
    for (m, c) in p.terms() {
        debug_assert!(m.0[var] == 0 || c.is_zero());
        let e: Vec<i32> = keep.iter().map(|&i| m.0[i]).collect();
        out = &out + &MultiPoly::monomial(n - 1, e, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::poly::rat;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn substitution_resultant() {
        let n = names(&["x", "y"]);
        let f = parse_poly("y^2 - x", &n).unwrap();
        let g = parse_poly("y - 1", &n).unwrap();
        let r = univariate_resultant(&f, &g, 1).unwrap();
        assert_eq!(r, parse_poly("1 - x", &n).unwrap());
    }

    #[test]
    fn linear_resultant_sign() {
        let n = names(&["a", "b", "y"]);
        let f = parse_poly("y - a", &n).unwrap();
        let g = parse_poly("y - b", &n).unwrap();
        let r = univariate_resultant(&f, &g, 2).unwrap();
        assert_eq!(r, parse_poly("a - b", &n).unwrap());
    }

    #[test]
    fn quadratic_discriminant() {
        let n = names(&["x1", "y"]);
        let f = parse_poly("y^2 + x1*y - 1", &n).unwrap();
        let d = discriminant(&f, 1).unwrap();
        assert_eq!(d, parse_poly("-(x1^2 + 4)", &n).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let n = names(&["x", "y"]);
        let f = parse_poly("y - x", &n).unwrap();
        assert!(discriminant(&f, 1).is_err());
        assert!(univariate_resultant(&f, &MultiPoly::zero(2), 1).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let c = |v: i64| MultiPoly::constant(1, rat(v));
        let m = vec![
            vec![c(0), c(2), c(1)],
            vec![c(3), c(1), c(4)],
            vec![c(5), c(9), c(2)],
        ];
        // 0*(2-36) - 2*(6-20) + 1*(27-5) = 28 + 22
        assert_eq!(bareiss_det(m, 1), c(50));
    }

    #[test]
    fn essential_strips_monomials() {
        let p: MultiPoly = "x1^3*x2".parse().unwrap();
        assert_eq!(essential_resultant(&p), MultiPoly::one(2));
    }
}
