//! Truncated evaluation of `x^gamma sum_{s in S} phi(s + gamma) x^s`.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::coefficient::OreSatoCoefficient;
use crate::algebra::poly::rat_to_f64;
use crate::error::{Error, Result};
use crate::geometry::linalg::dot_rat;
use crate::supports::spec::{box_points, SupportSpec};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// Modulus of the sum over the outermost shell `max |s_i| = N`.
    pub last_shell: f64,
    pub terms: usize,
}

fn is_pole(z: &Rat) -> bool {
    z.is_integer() && !z.is_positive()
}

/// `phi(u) x^u` at the lattice point `s`, `u = s + gamma`.
pub fn series_term(phi: &OreSatoCoefficient, s: &[i64], x: &[Complex64]) -> Result<Complex64> {
    let gamma = phi.gamma_or_zero();
    let u: Vec<Rat> = s
        .iter()
        .zip(&gamma)
        .map(|(a, g)| Rat::from_integer((*a).into()) + g)
        .collect();
    let mut num_poles = 0usize;
    let mut zeros = 0usize;
    let mut log_mod = 0.0f64;
    let mut phase = Complex64::new(rat_to_f64(&phi.scale), 0.0);
    for r in &phi.num_rows {
        let z = dot_rat(&r.a, &u) - &r.c;
        if is_pole(&z) {
            num_poles += 1;
            continue;
        }
        let (lg, sign) = libm::lgamma_r(rat_to_f64(&z));
        log_mod += lg;
        phase *= sign as f64;
    }
    for r in &phi.den_rows {
        let z = dot_rat(&r.a, &u) - &r.c;
        if is_pole(&z) {
            zeros += 1;
            continue;
        }
        let (lg, sign) = libm::lgamma_r(rat_to_f64(&z));
        log_mod -= lg;
        phase *= sign as f64;
    }
    for r in &phi.linear_factors {
        let z = dot_rat(&r.a, &u) - &r.c;
        if z.is_zero() {
            zeros += 1;
        } else {
            phase *= rat_to_f64(&z);
        }
    }
    if zeros > num_poles {
        return Ok(Complex64::zero());
    }
    if num_poles > 0 {
        return Err(Error::InvalidParameter(format!(
            "Gamma pole at s = {:?} is not compensated by the denominator",
            s
        )));
    }
    let mut log_c = Complex64::new(log_mod, 0.0);
    for (i, ui) in u.iter().enumerate() {
        let uf = rat_to_f64(ui);
        let t = Complex64::new(rat_to_f64(&phi.t[i]), 0.0);
        if x[i].norm() == 0.0 {
            if ui.is_zero() {
                continue;
            }
            return Ok(Complex64::zero());
        }
        log_c += (t.ln() + x[i].ln()) * uf;
    }
    Ok(phase * log_c.exp())
}

/// Partial sum over the support points with `max |s_i| <= n_trunc`.
///
/// Terms are computed in parallel and added shell by shell in a fixed
/// order, so the result does not depend on the thread count.
pub fn series_eval(
    phi: &OreSatoCoefficient,
    support: &SupportSpec,
    x: &[Complex64],
    n_trunc: usize,
) -> Result<SeriesValue> {
    phi.validate()?;
    let n = phi.n;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if support.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: support.nvars(),
        });
    }
    if !support.is_strongly_convex() {
        return Err(Error::Invalid(
            "support is not contained in a strongly convex cone; the series has no convergence domain".into(),
        ));
    }
    let r = n_trunc as i64;
    let pts: Vec<Vec<i64>> = box_points(n, r).into_iter().filter(|s| support.contains(s)).collect();
    let terms: Vec<(i64, Complex64)> = pts
        .par_iter()
        .map(|s| {
            let shell = s.iter().map(|v| v.abs()).max().unwrap_or(0);
            series_term(phi, s, x).map(|t| (shell, t))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut shells = vec![Complex64::zero(); n_trunc + 1];
    for (k, t) in &terms {
        shells[*k as usize] += t;
    }
    let mut value = Complex64::zero();
    for s in &shells {
        value += s;
    }
    let gamma = phi.gamma_or_zero();
    if gamma.iter().any(|g| !g.is_zero()) {
        let mut lg = Complex64::zero();
        for (xi, g) in x.iter().zip(&gamma) {
            lg += xi.ln() * rat_to_f64(g);
        }
        value *= lg.exp();
    }
    Ok(SeriesValue {
        value,
        last_shell: shells[n_trunc].norm(),
        terms: terms.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;
    use crate::horn::coefficient::GammaRow;

    #[test]
    fn binomial_series_of_a_line() {
        let phi = OreSatoCoefficient::gamma_ratio(
            2,
            vec![GammaRow::new(vec![1, 1], rat(-1))],
            vec![GammaRow::new(vec![1, 0], rat(-1)), GammaRow::new(vec![0, 1], rat(-1))],
        );
        let x = [Complex64::new(0.1, 0.0), Complex64::new(0.2, 0.0)];
        let v = series_eval(&phi, &SupportSpec::orthant(2), &x, 40).unwrap();
        assert!((v.value.re - 1.0 / 0.7).abs() < 1e-10);
        assert!(v.value.im.abs() < 1e-12);
        assert!(v.last_shell < 1e-12);
    }

    #[test]
    fn denominator_poles_kill_terms() {
        // 1 / Gamma(s + 1) vanishes for s < 0
        let phi = OreSatoCoefficient::gamma_ratio(1, vec![], vec![GammaRow::new(vec![1], rat(-1))]);
        let t = series_term(&phi, &[-2], &[Complex64::new(0.5, 0.0)]).unwrap();
        assert_eq!(t, Complex64::zero());
        let bad = OreSatoCoefficient::gamma_ratio(1, vec![GammaRow::new(vec![1], rat(0))], vec![]);
        assert!(series_term(&bad, &[0], &[Complex64::new(0.5, 0.0)]).is_err());
    }
}
