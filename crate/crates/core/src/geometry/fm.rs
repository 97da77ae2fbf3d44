//! Fourier-Motzkin feasibility with strict inequalities.
//!
//! Variable coefficients are rational; constant terms live in any ordered
//! rational vector space, which lets the amoeba spine run over
//! `Q log 2 + Q log 3` without floating point.

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::Rat;

pub trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    /// Some positive element.
    fn unit() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, r: &Rat) -> Self;
    fn signum(&self) -> i32;

    fn minus(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
    Lt,
}

/// `a . t + b  rel  0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<S> {
    pub a: Vec<Rat>,
    pub b: S,
    pub rel: Rel,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(a: Vec<Rat>, b: S, rel: Rel) -> Self {
        Constraint { a, b, rel }
    }

    fn value(&self, t: &[S]) -> S {
        let mut v = self.b.clone();
        for (ai, ti) in self.a.iter().zip(t) {
            if !ai.is_zero() {
                v = v.add(&ti.scale(ai));
            }
        }
        v
    }

    fn combine(&self, f: &Rat, o: &Constraint<S>, g: &Rat) -> Constraint<S> {
        Constraint {
            a: self.a.iter().zip(&o.a).map(|(x, y)| x * f + y * g).collect(),
            b: self.b.scale(f).add(&o.b.scale(g)),
            rel: if self.rel == Rel::Lt || o.rel == Rel::Lt {
                Rel::Lt
            } else {
                Rel::Le
            },
        }
    }

    fn holds_constant(&self) -> bool {
        let s = self.b.signum();
        match self.rel {
            Rel::Eq => s == 0,
            Rel::Le => s <= 0,
            Rel::Lt => s < 0,
        }
    }

    pub fn holds_at(&self, t: &[S]) -> bool {
        let s = self.value(t).signum();
        match self.rel {
            Rel::Eq => s == 0,
            Rel::Le => s <= 0,
            Rel::Lt => s < 0,
        }
    }
}

enum Step<S> {
    Equality(usize, Constraint<S>),
    Bounds(usize, Vec<Constraint<S>>),
}

/// A point satisfying every constraint, or `None` when infeasible.
pub fn feasible_point<S: Scalar>(cons: &[Constraint<S>], nvars: usize) -> Option<Vec<S>> {
    let mut eqs: Vec<Constraint<S>> = cons.iter().filter(|c| c.rel == Rel::Eq).cloned().collect();
    let mut ineqs: Vec<Constraint<S>> = cons.iter().filter(|c| c.rel != Rel::Eq).cloned().collect();
    let mut steps: Vec<Step<S>> = Vec::new();
    let mut eliminated = vec![false; nvars];

    while let Some(pos) = eqs.iter().position(|c| c.a.iter().any(|x| !x.is_zero())) {
        let e = eqs.swap_remove(pos);
        let j = e.a.iter().position(|x| !x.is_zero()).unwrap();
        let aj = e.a[j].clone();
        let sub = |c: &mut Constraint<S>| {
            if !c.a[j].is_zero() {
                let f = -(&c.a[j] / &aj);
                *c = c.combine(&Rat::one(), &e, &f);
                c.a[j] = <Rat as Zero>::zero();
            }
        };
        eqs.iter_mut().for_each(sub);
        ineqs.iter_mut().for_each(sub);
        eliminated[j] = true;
        steps.push(Step::Equality(j, e));
    }
    if eqs.iter().any(|c| !c.holds_constant()) {
        return None;
    }

    for j in 0..nvars {
        if eliminated[j] {
            continue;
        }
        let (touch, rest): (Vec<_>, Vec<_>) = ineqs.into_iter().partition(|c| !c.a[j].is_zero());
        let mut next = rest;
        let ups: Vec<&Constraint<S>> = touch.iter().filter(|c| c.a[j].is_positive()).collect();
        let lows: Vec<&Constraint<S>> = touch.iter().filter(|c| c.a[j].is_negative()).collect();
        for u in &ups {
            for l in &lows {
                let f = l.a[j].abs();
                let g = u.a[j].clone();
                let mut c = u.combine(&f, l, &g);
                c.a[j] = <Rat as Zero>::zero();
                if !next.contains(&c) {
                    next.push(c);
                }
            }
        }
        ineqs = next;
        steps.push(Step::Bounds(j, touch));
    }
    if ineqs.iter().any(|c| !c.holds_constant()) {
        return None;
    }

    let mut t: Vec<S> = vec![S::zero(); nvars];
    for step in steps.iter().rev() {
        match step {
            Step::Bounds(j, cs) => {
                t[*j] = S::zero();
                let mut lo: Option<(S, bool)> = None;
                let mut hi: Option<(S, bool)> = None;
                for c in cs {
                    let aj = c.a[*j].clone();
                    let rest = c.value(&t);
                    let bound = rest.scale(&-aj.recip());
                    let strict = c.rel == Rel::Lt;
                    if aj.is_positive() {
                        let better = match &hi {
                            None => true,
                            Some((h, s)) => {
                                let d = bound.minus(h).signum();
                                d < 0 || (d == 0 && strict && !s)
                            }
                        };
                        if better {
                            hi = Some((bound, strict));
                        }
                    } else {
                        let better = match &lo {
                            None => true,
                            Some((l, s)) => {
                                let d = bound.minus(l).signum();
                                d > 0 || (d == 0 && strict && !s)
                            }
                        };
                        if better {
                            lo = Some((bound, strict));
                        }
                    }
                }
                let half = Rat::new(1.into(), 2.into());
                t[*j] = match (lo, hi) {
                    (None, None) => S::zero(),
                    (Some((l, _)), None) => l.add(&S::unit()),
                    (None, Some((h, _))) => h.minus(&S::unit()),
                    (Some((l, _)), Some((h, _))) => {
                        if l == h {
                            l
                        } else {
                            l.add(&h).scale(&half)
                        }
                    }
                };
            }
            Step::Equality(j, e) => {
                t[*j] = S::zero();
                let aj = e.a[*j].clone();
                t[*j] = e.value(&t).scale(&-aj.recip());
            }
        }
    }
    debug_assert!(cons.iter().all(|c| c.holds_at(&t)));
    Some(t)
}
