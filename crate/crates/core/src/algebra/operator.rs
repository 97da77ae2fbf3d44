use std::collections::HashMap;

use super::poly::MultiPoly;
use super::rational::{PowerForm, RationalFn};
use crate::error::{Error, Result};
use crate::Rat;

/// A polynomial `P(s)` read as the operator `P(theta)`, `theta_i = x_i d/dx_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorPoly {
    pub poly: MultiPoly,
}

impl OperatorPoly {
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.has_negative_exponents() {
            return Err(Error::Invalid("operator with negative powers of theta".into()));
        }
        Ok(OperatorPoly { poly })
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }
}

/// Euler-operator powers of one rational function, cached by multi-index.
pub struct ThetaCache {
    base: MultiPoly,
    theta_base: Vec<MultiPoly>,
    forms: HashMap<Vec<i32>, PowerForm>,
}

impl ThetaCache {
    pub fn new(y: &RationalFn) -> Self {
        let base = y.den().clone();
        let theta_base = (0..y.nvars()).map(|i| base.theta(i)).collect();
        let mut forms = HashMap::new();
        forms.insert(
            vec![0; y.nvars()],
            PowerForm {
                num: y.num().clone(),
                k: 1,
            },
        );
        ThetaCache {
            base,
            theta_base,
            forms,
        }
    }

    pub fn base(&self) -> &MultiPoly {
        &self.base
    }

    fn get(&mut self, alpha: &[i32]) -> PowerForm {
        if let Some(f) = self.forms.get(alpha) {
            return f.clone();
        }
        let i = alpha.iter().position(|&a| a > 0).expect("nonzero index");
        let mut prev = alpha.to_vec();
        prev[i] -= 1;
        let p = self.get(&prev);
        let num = if self.base.is_constant() {
            p.num.theta(i)
        } else {
            let k = Rat::from_integer(p.k.into());
            &(&p.num.theta(i) * &self.base) - &(&p.num * &self.theta_base[i]).scale(&k)
        };
        let k = if self.base.is_constant() { p.k } else { p.k + 1 };
        let f = PowerForm { num, k };
        self.forms.insert(alpha.to_vec(), f.clone());
        f
    }

    /// `P(theta) y` as `num / base^k`.
    pub fn apply(&mut self, op: &OperatorPoly) -> PowerForm {
        let parts: Vec<(Rat, PowerForm)> = op
            .poly
            .terms()
            .map(|(m, c)| (c.clone(), m.0.clone()))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|(c, a)| (c, self.get(&a)))
            .collect();
        let refs: Vec<(Rat, &PowerForm)> = parts.iter().map(|(c, f)| (c.clone(), f)).collect();
        PowerForm::align(&refs, &self.base)
    }
}

/// Apply `P(theta)` to `y`.
pub fn theta_apply(op: &OperatorPoly, y: &RationalFn) -> Result<RationalFn> {
    if op.nvars() != y.nvars() {
        return Err(Error::DimensionMismatch {
            expected: y.nvars(),
            got: op.nvars(),
        });
    }
    let mut cache = ThetaCache::new(y);
    let f = cache.apply(op);
    Ok(f.into_rational(cache.base()))
}

/// `x_i P(theta) y - Q(theta) y` with both sides sharing a cache.
pub fn horn_residual(
    cache: &mut ThetaCache,
    i: usize,
    p: &OperatorPoly,
    q: &OperatorPoly,
) -> RationalFn {
    let fp = cache.apply(p);
    let fq = cache.apply(q);
    let n = cache.base.nvars();
    let mut e = vec![0; n];
    e[i] = 1;
    let shifted = PowerForm {
        num: fp.num.mul_monomial(&e),
        k: fp.k,
    };
    let one = Rat::from_integer(1.into());
    let diff = PowerForm::align(&[(one.clone(), &shifted), (-one, &fq)], &cache.base);
    if diff.num.is_zero() {
        return RationalFn::zero(n);
    }
    diff.into_rational(&cache.base)
}
