//! Affine forms and products of them, the shape of every `P_i`, `Q_i`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::Rat;

/// `<a, s> + b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    pub a: Vec<Rat>,
    pub b: Rat,
}

impl LinForm {
    pub fn new(a: Vec<Rat>, b: Rat) -> Self {
        LinForm { a, b }
    }

    pub fn from_ints(a: &[i64], b: Rat) -> Self {
        LinForm {
            a: a.iter().map(|&x| Rat::from_integer(x.into())).collect(),
            b,
        }
    }

    pub fn nvars(&self) -> usize {
        self.a.len()
    }

    pub fn is_constant(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn plus(&self, k: &Rat) -> LinForm {
        LinForm {
            a: self.a.clone(),
            b: &self.b + k,
        }
    }

    /// The form evaluated at `s + d`.
    pub fn shift(&self, d: &[Rat]) -> LinForm {
        let extra = self.a.iter().zip(d).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
        self.plus(&extra)
    }

    pub fn eval(&self, s: &[Rat]) -> Rat {
        self.a.iter().zip(s).fold(self.b.clone(), |acc, (x, y)| acc + x * y)
    }

    pub fn eval_int(&self, s: &[i64]) -> Rat {
        self.a
            .iter()
            .zip(s)
            .fold(self.b.clone(), |acc, (x, y)| acc + x * Rat::from_integer((*y).into()))
    }

    pub fn eval_f64(&self, s: &[f64]) -> f64 {
        let f = |r: &Rat| crate::algebra::poly::rat_to_f64(r);
        self.a.iter().zip(s).fold(f(&self.b), |acc, (x, y)| acc + f(x) * y)
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::linear(&self.a, self.b.clone())
    }

    /// Read a polynomial of total degree at most one.
    pub fn from_poly(p: &MultiPoly) -> Result<LinForm> {
        let n = p.nvars();
        let mut a = vec![Rat::zero(); n];
        let mut b = Rat::zero();
        for (m, c) in p.terms() {
            let deg: i64 = m.0.iter().map(|&e| e as i64).sum();
            if m.0.iter().any(|&e| e < 0) || deg > 1 {
                return Err(Error::Invalid(format!("'{}' is not an affine form", p)));
            }
            match m.0.iter().position(|&e| e == 1) {
                Some(i) => a[i] = c.clone(),
                None => b = c.clone(),
            }
        }
        Ok(LinForm { a, b })
    }

    /// `(scale, form)` with the form's first nonzero slope equal to 1.
    pub fn monic(&self) -> (Rat, LinForm) {
        match self.a.iter().find(|x| !x.is_zero()) {
            None => (self.b.clone(), LinForm::new(vec![Rat::zero(); self.nvars()], Rat::one())),
            Some(l) => {
                let inv = l.recip();
                (
                    l.clone(),
                    LinForm {
                        a: self.a.iter().map(|x| x * &inv).collect(),
                        b: &self.b * &inv,
                    },
                )
            }
        }
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        self.to_poly().to_string_with(names)
    }
}

/// `lead * prod factors`, with every factor monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub lead: Rat,
    pub factors: Vec<LinForm>,
}

impl Factored {
    /// Normalizes factors and folds constants into the lead.
    pub fn new(nvars: usize, lead: Rat, factors: Vec<LinForm>) -> Factored {
        let mut lead = lead;
        let mut out = Vec::new();
        for f in factors {
            assert_eq!(f.nvars(), nvars, "factor dimension");
            let (c, m) = f.monic();
            lead *= c;
            if !f.is_constant() {
                out.push(m);
            }
        }
        if lead.is_zero() {
            out.clear();
        }
        out.sort();
        Factored { lead, factors: out }
    }

    pub fn constant(lead: Rat) -> Factored {
        Factored {
            lead,
            factors: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.lead.is_zero()
    }

    pub fn shift(&self, d: &[Rat]) -> Factored {
        Factored {
            lead: self.lead.clone(),
            factors: self.factors.iter().map(|f| f.shift(d)).collect(),
        }
    }

    pub fn to_poly(&self, nvars: usize) -> MultiPoly {
        self.factors
            .iter()
            .fold(MultiPoly::constant(nvars, self.lead.clone()), |acc, f| &acc * &f.to_poly())
    }

    pub fn eval_int(&self, s: &[i64]) -> Rat {
        self.factors.iter().fold(self.lead.clone(), |acc, f| acc * f.eval_int(s))
    }

    /// True when some factor vanishes at the lattice point.
    pub fn vanishes_at(&self, s: &[i64]) -> bool {
        self.is_zero() || self.factors.iter().any(|f| f.eval_int(s).is_zero())
    }

    /// Remove the factors the two products share.
    pub fn cancel(a: &Factored, b: &Factored) -> (Factored, Factored) {
        let mut left = Vec::new();
        let mut right = b.factors.clone();
        for f in &a.factors {
            if let Some(pos) = right.iter().position(|g| g == f) {
                right.remove(pos);
            } else {
                left.push(f.clone());
            }
        }
        (
            Factored {
                lead: a.lead.clone(),
                factors: left,
            },
            Factored {
                lead: b.lead.clone(),
                factors: right,
            },
        )
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        let mut parts = Vec::new();
        if !self.lead.is_one() || self.factors.is_empty() {
            parts.push(if self.lead.is_negative() && !self.factors.is_empty() {
                format!("({})", self.lead)
            } else {
                self.lead.to_string()
            });
        }
        for f in &self.factors {
            parts.push(format!("({})", f.to_string_with(names)));
        }
        parts.join("*")
    }
}

/// `s1, ..., sn`, the names used for Euler-operator variables in text form.
pub fn theta_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{}", i)).collect()
}

pub(crate) fn name_refs(names: &[String]) -> Vec<&str> {
    names.iter().map(|s| s.as_str()).collect()
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.factors.first().map(|l| l.nvars()).unwrap_or(0);
        let names = theta_names(n);
        write!(f, "{}", self.to_string_with(&name_refs(&names)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    #[test]
    fn monic_factors_collect_the_scale() {
        let f = Factored::new(
            2,
            rat(1),
            vec![LinForm::from_ints(&[3, 0], rat(3)), LinForm::from_ints(&[0, 0], rat(-2))],
        );
        assert_eq!(f.lead, rat(-6));
        assert_eq!(f.factors, vec![LinForm::from_ints(&[1, 0], rat(1))]);
        assert_eq!(f.to_poly(2), MultiPoly::linear(&[rat(-6), rat(0)], rat(-6)));
    }

    #[test]
    fn cancel_removes_shared_factors_once() {
        let x = LinForm::from_ints(&[1, 0], rat(0));
        let y = LinForm::from_ints(&[0, 1], rat(-4));
        let a = Factored::new(2, rat(1), vec![x.clone(), y.clone(), y.clone()]);
        let b = Factored::new(2, rat(2), vec![y.clone()]);
        let (l, r) = Factored::cancel(&a, &b);
        assert_eq!(l.factors.len(), 2);
        assert!(r.factors.is_empty());
        assert_eq!(r.lead, rat(2));
    }

    #[test]
    fn affine_round_trip() {
        let p = crate::algebra::parse_default("2*x1 - x2 + 1/3", 2).unwrap();
        let l = LinForm::from_poly(&p).unwrap();
        assert_eq!(l.to_poly(), p);
        assert!(LinForm::from_poly(&crate::algebra::parse_default("x1*x2", 2).unwrap()).is_err());
    }
}
