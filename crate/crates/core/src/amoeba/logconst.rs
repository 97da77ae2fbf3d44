//! Exact arithmetic in `Q log 2 + Q log 3`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::poly::rat_to_f64;
use crate::geometry::fm::Scalar;
use crate::Rat;

/// `n2 log 2 + n3 log 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LogConstant {
    pub n2: i64,
    pub n3: i64,
}

fn strip(mut m: BigInt, p: u32) -> (BigInt, i64) {
    let p = BigInt::from(p);
    let mut k = 0;
    while !m.is_zero() && (&m % &p).is_zero() {
        m /= &p;
        k += 1;
    }
    (m, k)
}

impl LogConstant {
    pub fn new(n2: i64, n3: i64) -> Self {
        LogConstant { n2, n3 }
    }

    /// `log |c|` when `|c| = 2^a 3^b`.
    pub fn from_rat(c: &Rat) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let (n, a2) = strip(c.numer().abs(), 2);
        let (n, a3) = strip(n, 3);
        let (d, b2) = strip(c.denom().abs(), 2);
        let (d, b3) = strip(d, 3);
        (n.is_one() && d.is_one()).then(|| LogConstant::new(a2 - b2, a3 - b3))
    }

    pub fn value(&self) -> f64 {
        self.n2 as f64 * std::f64::consts::LN_2 + self.n3 as f64 * 3f64.ln()
    }

    pub fn to_log_value(&self) -> LogValue {
        LogValue::new(Rat::from_integer(self.n2.into()), Rat::from_integer(self.n3.into()))
    }
}

impl fmt::Display for LogConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_log_value().fmt(f)
    }
}

/// `c2 log 2 + c3 log 3` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogValue {
    #[serde(with = "crate::ser::rat")]
    pub c2: Rat,
    #[serde(with = "crate::ser::rat")]
    pub c3: Rat,
}

impl LogValue {
    pub fn new(c2: Rat, c3: Rat) -> Self {
        LogValue { c2, c3 }
    }

    pub fn log2(k: i64) -> Self {
        LogValue::new(Rat::from_integer(k.into()), <Rat as Zero>::zero())
    }

    pub fn value(&self) -> f64 {
        rat_to_f64(&self.c2) * std::f64::consts::LN_2 + rat_to_f64(&self.c3) * 3f64.ln()
    }
}

/// Sign of `a log 2 - b log 3` for positive rationals `a`, `b`.
fn sign_of_difference(a: &Rat, b: &Rat) -> i32 {
    let fa = rat_to_f64(a) * std::f64::consts::LN_2;
    let fb = rat_to_f64(b) * 3f64.ln();
    if (fa - fb).abs() > 1e-9 * fa.abs().max(fb.abs()) {
        return if fa > fb { 1 } else { -1 };
    }
    // 2^A vs 3^B with A, B integers after clearing denominators.
    let l = a.denom().lcm(b.denom());
    let ea = (a * Rat::from_integer(l.clone())).to_integer().to_u32();
    let eb = (b * Rat::from_integer(l)).to_integer().to_u32();
    match (ea, eb) {
        (Some(ea), Some(eb)) => match BigInt::from(2).pow(ea).cmp(&BigInt::from(3).pow(eb)) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
        },
        _ => {
            if fa >= fb {
                1
            } else {
                -1
            }
        }
    }
}

impl Scalar for LogValue {
    fn zero() -> Self {
        LogValue::new(<Rat as Zero>::zero(), <Rat as Zero>::zero())
    }
    fn unit() -> Self {
        LogValue::log2(1)
    }
    fn add(&self, o: &Self) -> Self {
        LogValue::new(&self.c2 + &o.c2, &self.c3 + &o.c3)
    }
    fn scale(&self, r: &Rat) -> Self {
        LogValue::new(&self.c2 * r, &self.c3 * r)
    }
    fn signum(&self) -> i32 {
        let s2 = if self.c2.is_positive() { 1 } else if self.c2.is_negative() { -1 } else { 0 };
        let s3 = if self.c3.is_positive() { 1 } else if self.c3.is_negative() { -1 } else { 0 };
        if s2 == 0 || s3 == 0 || s2 == s3 {
            return if s2 != 0 { s2 } else { s3 };
        }
        if s2 > 0 {
            sign_of_difference(&self.c2, &-&self.c3)
        } else {
            -sign_of_difference(&-&self.c2, &self.c3)
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c2.is_zero(), self.c3.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}*log2", self.c2),
            (true, false) => write!(f, "{}*log3", self.c3),
            (false, false) if self.c3.is_negative() => write!(f, "{}*log2 - {}*log3", self.c2, -&self.c3),
            (false, false) => write!(f, "{}*log2 + {}*log3", self.c2, self.c3),
        }
    }
}

/// Floating scalar with a fixed comparison tolerance, for non-certified spines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx(pub f64);

pub const APPROX_TOL: f64 = 1e-9;

impl Scalar for Approx {
    fn zero() -> Self {
        Approx(0.0)
    }
    fn unit() -> Self {
        Approx(1.0)
    }
    fn add(&self, o: &Self) -> Self {
        Approx(self.0 + o.0)
    }
    fn scale(&self, r: &Rat) -> Self {
        Approx(self.0 * rat_to_f64(r))
    }
    fn signum(&self) -> i32 {
        if self.0 > APPROX_TOL {
            1
        } else if self.0 < -APPROX_TOL {
            -1
        } else {
            0
        }
    }
}
