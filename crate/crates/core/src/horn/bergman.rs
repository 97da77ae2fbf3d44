//! Bergman kernels of the complex ellipsoids
//! `|x_1|^{2/p_1} + ... + |x_n|^{2/p_n} < 1`, up to the factor `pi^{-n}`.

use num_traits::One;

use super::coefficient::{GammaRow, OreSatoCoefficient};
use super::system::{horn_from_ore_sato, HornSystem};
use crate::algebra::rational::PowerForm;
use crate::algebra::resultant::{drop_var, univariate_resultant};
use crate::algebra::{MultiPoly, RationalFn};
use crate::error::{Error, Result};
use crate::Rat;

pub const NORMALIZATION_NOTE: &str = "closed form omits the factor pi^(-n)";

#[derive(Clone, Debug)]
pub struct BergmanKernel {
    pub p: Vec<i64>,
    pub coefficient: OreSatoCoefficient,
    pub system: HornSystem,
    /// `Err` carries the reason the closed form was not computed.
    pub closed_form: std::result::Result<RationalFn, Error>,
}

fn r(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

/// `Gamma(sum p_i (s_i + 1) + 1) / prod p_i Gamma(p_i (s_i + 1))`.
pub fn bergman_coefficient(p: &[i64]) -> Result<OreSatoCoefficient> {
    if p.is_empty() || p.iter().any(|&x| x < 1) {
        return Err(Error::Invalid(format!("p must be positive integers, got {:?}", p)));
    }
    let n = p.len();
    let total: i64 = p.iter().sum();
    let num = vec![GammaRow::new(p.to_vec(), r(-(total + 1)))];
    let den = (0..n)
        .map(|i| {
            let mut a = vec![0; n];
            a[i] = p[i];
            GammaRow::new(a, r(-p[i]))
        })
        .collect();
    let mut c = OreSatoCoefficient::gamma_ratio(n, num, den);
    c.scale = r(p.iter().product::<i64>()).recip();
    Ok(c)
}

pub fn bergman_kernel(p: &[i64]) -> Result<BergmanKernel> {
    let coefficient = bergman_coefficient(p)?;
    let system = horn_from_ore_sato(&coefficient)?;
    let closed_form = if p.len() <= 3 && p.iter().all(|&x| x <= 3) {
        Ok(closed_form(p))
    } else {
        Err(Error::Unsupported(format!(
            "closed form is computed for n <= 3 and p_i <= 3 only (p = {:?})",
            p
        )))
    };
    Ok(BergmanKernel {
        p: p.to_vec(),
        coefficient,
        system,
        closed_form,
    })
}

/// `G(w) = prod (w - sum_i xi_i)` over all `xi_i` with `xi_i^{p_i} = x_i`,
/// in the ring `x_1..x_n, w`.
pub fn root_sum_norm(p: &[i64]) -> MultiPoly {
    let n = p.len();
    let vars = 2 * n + 1;
    let w = n;
    let xi = |i: usize| n + 1 + i;
    let mut h = MultiPoly::var(vars, w);
    for i in 0..n {
        h = &h - &MultiPoly::var(vars, xi(i));
    }
    for i in (0..n).rev() {
        let f = &MultiPoly::var(vars, xi(i)).pow(p[i] as u32) - &MultiPoly::var(vars, i);
        h = univariate_resultant(&f, &h, xi(i)).expect("positive degrees");
    }
    for i in (0..n).rev() {
        h = drop_var(&h, xi(i));
    }
    h
}

/// `(1/prod p) d^n/dx_1..dx_n  sum 1 / (1 - sum xi)`.
fn closed_form(p: &[i64]) -> RationalFn {
    let n = p.len();
    let g = root_sum_norm(p);
    let at_one = |q: &MultiPoly| drop_var(&q.eval_var(n, &Rat::one()), n);
    let base = at_one(&g);
    let top = at_one(&g.derivative(n));
    let mut form = PowerForm { num: top, k: 1 };
    for i in 0..n {
        let k = r(form.k as i64);
        let num = &(&form.num.derivative(i) * &base) - &(&form.num * &base.derivative(i)).scale(&k);
        form = PowerForm { num, k: form.k + 1 }.reduce(&base);
    }
    let scale = r(p.iter().product::<i64>()).recip();
    if form.num.is_zero() {
        return RationalFn::zero(n);
    }
    form.into_rational(&base).scale(&scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_default;

    #[test]
    fn unit_ball_kernel() {
        let k = bergman_kernel(&[1, 1]).unwrap();
        let want = RationalFn::new(parse_default("2", 2).unwrap(), parse_default("(1 - x1 - x2)^3", 2).unwrap())
            .unwrap();
        assert!(k.closed_form.unwrap().equals(&want));
    }

    #[test]
    fn norm_of_linear_form() {
        assert_eq!(root_sum_norm(&[1, 1]), parse_default("x3 - x1 - x2", 3).unwrap());
        // w^2 - x1 for p = (2)
        assert_eq!(root_sum_norm(&[2]), parse_default("x2^2 - x1", 2).unwrap());
    }

    #[test]
    fn large_p_has_no_closed_form() {
        let k = bergman_kernel(&[4, 1]).unwrap();
        assert!(k.closed_form.is_err());
        assert_eq!(k.system.n, 2);
    }
}
