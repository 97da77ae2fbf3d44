use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::{content_of, MultiPoly};
use crate::error::{Error, Result};
use crate::Rat;

/// Quotient of Laurent polynomials in a normalized form.
///
/// Common monomial factors are moved into the numerator, the denominator is
/// divided out when it divides the numerator, integer content is removed
/// jointly and the denominator's leading coefficient is positive.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if num.nvars() != den.nvars() {
            return Err(Error::DimensionMismatch {
                expected: num.nvars(),
                got: den.nvars(),
            });
        }
        Ok(RationalFn { num, den }.normalized())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RationalFn::new(p, MultiPoly::one(n)).unwrap()
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(self) -> Self {
        let n = self.num.nvars();
        if self.num.is_zero() {
            return RationalFn {
                num: self.num,
                den: MultiPoly::one(n),
            };
        }
        let (m, den) = self.den.strip_monomial();
        let inv: Vec<i32> = m.iter().map(|e| -e).collect();
        let mut num = self.num.mul_monomial(&inv);
        let mut den = den;
        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = MultiPoly::one(n);
            }
        }
        let c = content_of(num.terms().map(|t| t.1).chain(den.terms().map(|t| t.1)));
        let mut s = c.recip();
        if den.leading().unwrap().1.is_negative() {
            s = -s;
        }
        RationalFn {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    /// Normalizing an already normal form changes nothing.
    pub fn renormalized(&self) -> Self {
        self.clone().normalized()
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        if self.den == o.den {
            return RationalFn::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        RationalFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn> {
        if o.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        RationalFn::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &Rat) -> RationalFn {
        RationalFn::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn derivative(&self, i: usize) -> RationalFn {
        let top = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        RationalFn::new(top, &self.den * &self.den).unwrap()
    }

    pub fn eval(&self, x: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Equality as functions, by cross-multiplication.
    pub fn equals(&self, o: &RationalFn) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `num / base^k`, the shape produced by repeated Euler operators.
#[derive(Clone, Debug)]
pub struct PowerForm {
    pub num: MultiPoly,
    pub k: u32,
}

impl PowerForm {
    /// Bring several forms over the common power `base^K`.
    pub fn align(forms: &[(Rat, &PowerForm)], base: &MultiPoly) -> PowerForm {
        let k = forms.iter().map(|f| f.1.k).max().unwrap_or(0);
        let n = base.nvars();
        let mut num = MultiPoly::zero(n);
        let mut pows: Vec<Option<MultiPoly>> = vec![None; k as usize + 1];
        for (c, f) in forms {
            let d = (k - f.k) as usize;
            if pows[d].is_none() {
                pows[d] = Some(base.pow(d as u32));
            }
            num = &num + &(&f.num * pows[d].as_ref().unwrap()).scale(c);
        }
        PowerForm { num, k }
    }

    /// Cancel whole powers of the base.
    pub fn reduce(mut self, base: &MultiPoly) -> PowerForm {
        if base.is_constant() {
            let c = base.constant_term();
            let s = super::poly::pow_rat(&c, self.k as i32).recip();
            return PowerForm {
                num: self.num.scale(&s),
                k: 0,
            };
        }
        while self.k > 0 {
            if self.num.is_zero() {
                self.k = 0;
                break;
            }
            match self.num.div_exact(base) {
                Some(q) => {
                    self.num = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn into_rational(self, base: &MultiPoly) -> RationalFn {
        let r = self.reduce(base);
        RationalFn::new(r.num, base.pow(r.k)).unwrap()
    }
}
