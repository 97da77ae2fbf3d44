//! The Mellin system of `y^m + x_1 y^{m_1} + ... + x_n y^{m_n} - 1 = 0`,
//! rewritten in `xi_i = x_i^m` as a Horn system.

use num_traits::One;

use super::linform::{Factored, LinForm};
use super::system::HornSystem;
use crate::error::{Error, Result};
use crate::Rat;

fn r(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

/// Factors of the right-hand operator of equation `i` in `theta_x`:
/// `prod_{j<m_i} (<m., theta> + 1 + m j) * prod_{j<m-m_i} (<m'., theta> - 1 + m j)`.
pub fn mellin_rhs_factors(m: i64, exps: &[i64], i: usize) -> Vec<LinForm> {
    let primes: Vec<i64> = exps.iter().map(|e| m - e).collect();
    let mut out = Vec::new();
    for j in 0..exps[i] {
        out.push(LinForm::from_ints(exps, r(1 + m * j)));
    }
    for j in 0..primes[i] {
        out.push(LinForm::from_ints(&primes, r(-1 + m * j)));
    }
    out
}

pub fn mellin_horn(m: i64, exps: &[i64]) -> Result<HornSystem> {
    let n = exps.len();
    if n == 0 {
        return Err(Error::Invalid("at least one exponent is required".into()));
    }
    if exps.windows(2).any(|w| w[0] <= w[1]) || *exps.last().unwrap() < 1 {
        return Err(Error::Invalid(format!(
            "exponents must be strictly decreasing positive integers, got {:?}",
            exps
        )));
    }
    if m <= exps[0] {
        return Err(Error::Invalid(format!("m = {} must exceed m_1 = {}", m, exps[0])));
    }
    let scale = |l: LinForm| LinForm::new(l.a.iter().map(|x| x * r(m)).collect(), l.b);
    let mut pairs = Vec::new();
    for i in 0..n {
        let p = Factored::new(n, Rat::one(), mellin_rhs_factors(m, exps, i).into_iter().map(scale).collect());
        let sign = if exps[i] % 2 == 0 { 1 } else { -1 };
        let lead = r(sign) * num_traits::pow(r(m), m as usize);
        let mut e = vec![0; n];
        e[i] = m;
        let q = Factored::new(n, lead, (0..m).map(|j| LinForm::from_ints(&e, r(-j))).collect());
        pairs.push((p, q));
    }
    HornSystem::from_factored(n, pairs)
}
