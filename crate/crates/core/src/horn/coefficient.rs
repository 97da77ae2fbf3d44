//! Ore-Sato coefficients
//! `phi(u) = scale * t^u * prod Gamma(<A,u> - c) / prod Gamma(<B,u> - d) * prod (<a,u> - c)`
//! with `u = s + gamma`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::linalg::rank_i64;
use crate::Rat;

fn one() -> Rat {
    Rat::one()
}

/// `Gamma(<A, u> - c)` (or `<A, u> - c` for linear factors).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaRow {
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    #[serde(with = "crate::ser::rat")]
    pub c: Rat,
}

impl GammaRow {
    pub fn new(a: Vec<i64>, c: Rat) -> Self {
        GammaRow { a, c }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OreSatoCoefficient {
    pub n: usize,
    #[serde(with = "crate::ser::rat_vec")]
    pub t: Vec<Rat>,
    #[serde(default, with = "crate::ser::rat_vec")]
    pub gamma: Vec<Rat>,
    #[serde(default)]
    pub num_rows: Vec<GammaRow>,
    #[serde(default)]
    pub den_rows: Vec<GammaRow>,
    #[serde(default)]
    pub linear_factors: Vec<GammaRow>,
    #[serde(default = "one", with = "crate::ser::rat")]
    pub scale: Rat,
}

impl OreSatoCoefficient {
    /// Coefficient with `t = 1`, `gamma = 0`, unit scale and no linear factors.
    pub fn gamma_ratio(n: usize, num_rows: Vec<GammaRow>, den_rows: Vec<GammaRow>) -> Self {
        OreSatoCoefficient {
            n,
            t: vec![Rat::one(); n],
            gamma: vec![Rat::zero(); n],
            num_rows,
            den_rows,
            linear_factors: Vec::new(),
            scale: Rat::one(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let mut c: OreSatoCoefficient =
            serde_json::from_str(s).map_err(|e| Error::Invalid(format!("Ore-Sato JSON: {}", e)))?;
        if c.gamma.is_empty() {
            c.gamma = vec![Rat::zero(); c.n];
        }
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn gamma_or_zero(&self) -> Vec<Rat> {
        if self.gamma.is_empty() {
            vec![Rat::zero(); self.n]
        } else {
            self.gamma.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        if self.t.len() != n {
            return Err(Error::Invalid(format!("t: expected {} entries, got {}", n, self.t.len())));
        }
        if let Some(i) = self.t.iter().position(|x| x.is_zero()) {
            return Err(Error::Invalid(format!("t[{}] must be nonzero", i)));
        }
        if !self.gamma.is_empty() && self.gamma.len() != n {
            return Err(Error::Invalid(format!(
                "gamma: expected {} entries, got {}",
                n,
                self.gamma.len()
            )));
        }
        if self.scale.is_zero() {
            return Err(Error::Invalid("scale must be nonzero".into()));
        }
        for (name, rows) in [
            ("num_rows", &self.num_rows),
            ("den_rows", &self.den_rows),
            ("linear_factors", &self.linear_factors),
        ] {
            for (k, r) in rows.iter().enumerate() {
                if r.a.len() != n {
                    return Err(Error::Invalid(format!(
                        "{}[{}].A: expected {} entries, got {}",
                        name,
                        k,
                        n,
                        r.a.len()
                    )));
                }
                if r.a.iter().all(|&x| x == 0) {
                    return Err(Error::Invalid(format!("{}[{}].A is the zero vector", name, k)));
                }
            }
        }
        let rows: Vec<Vec<i64>> = self.canonical_rows().into_iter().map(|r| r.a).collect();
        let rank = rank_i64(&rows, n);
        if rank < n {
            return Err(Error::Invalid(format!(
                "rows span a space of rank {} < n = {}",
                rank, n
            )));
        }
        Ok(())
    }

    /// Every factor rewritten as a numerator Gamma row.
    ///
    /// `1/Gamma(<B,u> - d)` becomes `Gamma(<-B,u> + 1 + d)` by reflection and
    /// `<a,u> - c = Gamma(<a,u> - c + 1) / Gamma(<a,u> - c)` contributes
    /// the pair `(a, c - 1)`, `(-a, -1 - c)`.
    pub fn canonical_rows(&self) -> Vec<GammaRow> {
        let mut out: Vec<GammaRow> = self.num_rows.clone();
        for r in &self.den_rows {
            out.push(GammaRow::new(r.a.iter().map(|x| -x).collect(), -Rat::one() - &r.c));
        }
        for r in &self.linear_factors {
            out.push(GammaRow::new(r.a.clone(), &r.c - Rat::one()));
            out.push(GammaRow::new(r.a.iter().map(|x| -x).collect(), -Rat::one() - &r.c));
        }
        out
    }
}

/// Signed row sum vanishes.
pub fn nonconfluency_check(phi: &OreSatoCoefficient) -> bool {
    let mut sum = vec![0i64; phi.n];
    for r in phi.canonical_rows() {
        for (s, a) in sum.iter_mut().zip(&r.a) {
            *s += a;
        }
    }
    sum.iter().all(|&x| x == 0)
}
