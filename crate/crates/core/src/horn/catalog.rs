//! Ready-made coefficients used by the command line and the test suites.

use super::coefficient::{GammaRow, OreSatoCoefficient};
use crate::algebra::poly::{rat, ratio};
use crate::Rat;

/// `(s1 - 3)(s2 - 4) Gamma(s1 + s2) / (Gamma(s1) Gamma(s2))`; its Horn
/// system has the singular locus `(1 - x1)(1 - x2)(1 - x1 - x2)`.
pub fn pentagon_coefficient() -> OreSatoCoefficient {
    let mut c = OreSatoCoefficient::gamma_ratio(
        2,
        vec![GammaRow::new(vec![1, 1], rat(0))],
        vec![GammaRow::new(vec![1, 0], rat(0)), GammaRow::new(vec![0, 1], rat(0))],
    );
    c.linear_factors = vec![GammaRow::new(vec![1, 0], rat(3)), GammaRow::new(vec![0, 1], rat(4))];
    c
}

/// `Gamma(2 s1 + s2 + alpha) Gamma(s1 + 2 s2 + beta) / (Gamma(3 s1 + 3) Gamma(3 s2 + 3))`,
/// a simplified series for a root of `y^3 + x1 y^2 + x2 y - 1`.
pub fn cubic_coefficient(alpha: Rat, beta: Rat) -> OreSatoCoefficient {
    OreSatoCoefficient::gamma_ratio(
        2,
        vec![GammaRow::new(vec![2, 1], -alpha), GammaRow::new(vec![1, 2], -beta)],
        vec![GammaRow::new(vec![3, 0], rat(-3)), GammaRow::new(vec![0, 3], rat(-3))],
    )
}

/// Generic parameters for [`cubic_coefficient`].
pub fn cubic_default() -> OreSatoCoefficient {
    cubic_coefficient(ratio(1, 5), ratio(1, 7))
}

/// `Gamma(s1 + p S) Gamma(S) / (prod Gamma(s_i + 1) Gamma(p S))` with
/// `S = s2 + ... + sn + 1`; the series sums to `1 / ((1 - x1)^p - x2 - ... - xn)`.
pub fn non_bergman_coefficient(n: usize, p: i64) -> OreSatoCoefficient {
    let mut a1 = vec![p; n];
    a1[0] = 1;
    let mut a2 = vec![1; n];
    a2[0] = 0;
    let mut b = vec![p; n];
    b[0] = 0;
    let mut den: Vec<GammaRow> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            GammaRow::new(e, rat(-1))
        })
        .collect();
    den.push(GammaRow::new(b, rat(-p)));
    OreSatoCoefficient::gamma_ratio(
        n,
        vec![GammaRow::new(a1, rat(-p)), GammaRow::new(a2, rat(-1))],
        den,
    )
}

/// Five rows in three variables whose support cones do not form a fan.
pub fn non_fan_rows() -> OreSatoCoefficient {
    let rows = [
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 2],
        vec![-1, 0, -1],
        vec![0, -1, -1],
    ];
    OreSatoCoefficient::gamma_ratio(3, rows.iter().map(|a| GammaRow::new(a.clone(), rat(0))).collect(), vec![])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horn::coefficient::nonconfluency_check;

    #[test]
    fn catalog_entries_are_valid_and_nonconfluent() {
        for c in [
            pentagon_coefficient(),
            cubic_default(),
            non_bergman_coefficient(3, 2),
            non_fan_rows(),
        ] {
            c.validate().unwrap();
            assert!(nonconfluency_check(&c));
        }
    }
}
