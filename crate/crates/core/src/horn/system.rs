//! Horn systems `x_i P_i(theta) y = Q_i(theta) y`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coefficient::OreSatoCoefficient;
use super::linform::{name_refs, theta_names, Factored, LinForm};
use crate::algebra::operator::{horn_residual, ThetaCache};
use crate::algebra::{parse_poly, parse_rat, MultiPoly, OperatorPoly, RationalFn};
use crate::error::{Error, Result};
use crate::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub p: OperatorPoly,
    pub q: OperatorPoly,
    pub p_factored: Option<Factored>,
    pub q_factored: Option<Factored>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HornSystem {
    pub n: usize,
    pub equations: Vec<Equation>,
}

fn unit(n: usize, i: usize, sign: i64) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); n];
    e[i] = Rat::from_integer(sign.into());
    e
}

impl HornSystem {
    pub fn from_polys(n: usize, pairs: Vec<(MultiPoly, MultiPoly)>) -> Result<HornSystem> {
        if pairs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: pairs.len(),
            });
        }
        let mut equations = Vec::new();
        for (i, (p, q)) in pairs.into_iter().enumerate() {
            for poly in [&p, &q] {
                if poly.nvars() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: poly.nvars(),
                    });
                }
                if poly.is_zero() {
                    return Err(Error::Invalid(format!("equation {}: zero operator", i + 1)));
                }
            }
            equations.push(Equation {
                p: OperatorPoly::new(p)?,
                q: OperatorPoly::new(q)?,
                p_factored: None,
                q_factored: None,
            });
        }
        Ok(HornSystem { n, equations })
    }

    pub fn from_factored(n: usize, pairs: Vec<(Factored, Factored)>) -> Result<HornSystem> {
        let polys = pairs.iter().map(|(p, q)| (p.to_poly(n), q.to_poly(n))).collect();
        let mut h = HornSystem::from_polys(n, polys)?;
        for (eq, (p, q)) in h.equations.iter_mut().zip(pairs) {
            eq.p_factored = Some(p);
            eq.q_factored = Some(q);
        }
        Ok(h)
    }

    pub fn is_nonconfluent(&self) -> bool {
        self.equations
            .iter()
            .all(|e| e.p.poly.total_degree() == e.q.poly.total_degree())
    }

    pub fn factored(&self) -> Option<Vec<(&Factored, &Factored)>> {
        self.equations
            .iter()
            .map(|e| Some((e.p_factored.as_ref()?, e.q_factored.as_ref()?)))
            .collect()
    }

    /// The same system with the equations listed in another order.
    ///
    /// Equation `k` of the result is equation `perm[k]` of `self`, with the
    /// variables renamed accordingly.
    pub fn permuted(&self, perm: &[usize]) -> HornSystem {
        let n = self.n;
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let rename_lf = |l: &LinForm| LinForm::new(perm.iter().map(|&p| l.a[p].clone()).collect(), l.b.clone());
        let rename_f = |f: &Factored| Factored::new(n, f.lead.clone(), f.factors.iter().map(rename_lf).collect());
        let equations = perm
            .iter()
            .map(|&p| {
                let e = &self.equations[p];
                Equation {
                    p: OperatorPoly::new(e.p.poly.remap(n, &inv)).unwrap(),
                    q: OperatorPoly::new(e.q.poly.remap(n, &inv)).unwrap(),
                    p_factored: e.p_factored.as_ref().map(rename_f),
                    q_factored: e.q_factored.as_ref().map(rename_f),
                }
            })
            .collect();
        HornSystem { n, equations }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let names = theta_names(self.n);
        let refs = name_refs(&names);
        let eqs: Vec<EquationJson> = self
            .equations
            .iter()
            .map(|e| {
                let (p, p_lead) = match &e.p_factored {
                    Some(f) => (f.factors.iter().map(|l| l.to_string_with(&refs)).collect(), f.lead.to_string()),
                    None => (vec![e.p.poly.to_string_with(&refs)], "1".to_string()),
                };
                let (q, q_lead) = match &e.q_factored {
                    Some(f) => (f.factors.iter().map(|l| l.to_string_with(&refs)).collect(), f.lead.to_string()),
                    None => (vec![e.q.poly.to_string_with(&refs)], "1".to_string()),
                };
                EquationJson {
                    p,
                    p_lead,
                    q,
                    q_lead,
                    p_expanded: Some(e.p.poly.to_string_with(&refs)),
                    q_expanded: Some(e.q.poly.to_string_with(&refs)),
                }
            })
            .collect();
        serde_json::to_value(SystemJson {
            n: self.n,
            variables: Some(names.clone()),
            equations: eqs,
        })
        .expect("serializable")
    }

    /// Reads factor lists in the variables `s1..sn`; factored forms are kept
    /// when every factor is affine.
    pub fn from_json(s: &str) -> Result<HornSystem> {
        let js: SystemJson =
            serde_json::from_str(s).map_err(|e| Error::Invalid(format!("Horn system JSON: {}", e)))?;
        let n = js.n;
        let names = theta_names(n);
        let mut pairs = Vec::new();
        let mut all_affine = true;
        let mut factored = Vec::new();
        for (k, e) in js.equations.iter().enumerate() {
            let side = |list: &[String], lead: &str, label: &str| -> Result<(MultiPoly, Option<Factored>)> {
                let lead = parse_rat(lead)
                    .map_err(|err| Error::Invalid(format!("equations[{}].{}_lead: {}", k, label, err)))?;
                let mut poly = MultiPoly::constant(n, lead.clone());
                let mut forms = Vec::new();
                let mut affine = true;
                for (j, f) in list.iter().enumerate() {
                    let p = parse_poly(f, &names)
                        .map_err(|err| Error::Invalid(format!("equations[{}].{}[{}]: {}", k, label, j, err)))?;
                    match LinForm::from_poly(&p) {
                        Ok(l) => forms.push(l),
                        Err(_) => affine = false,
                    }
                    poly = &poly * &p;
                }
                let fac = if affine { Some(Factored::new(n, lead, forms)) } else { None };
                Ok((poly, fac))
            };
            let (p, pf) = side(&e.p, &e.p_lead, "P")?;
            let (q, qf) = side(&e.q, &e.q_lead, "Q")?;
            match (pf, qf) {
                (Some(a), Some(b)) => factored.push((a, b)),
                _ => all_affine = false,
            }
            pairs.push((p, q));
        }
        if all_affine {
            HornSystem::from_factored(n, factored)
        } else {
            HornSystem::from_polys(n, pairs)
        }
    }
}

fn one_str() -> String {
    "1".into()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationJson {
    #[serde(rename = "P")]
    p: Vec<String>,
    #[serde(rename = "P_lead", default = "one_str")]
    p_lead: String,
    #[serde(rename = "Q")]
    q: Vec<String>,
    #[serde(rename = "Q_lead", default = "one_str")]
    q_lead: String,
    #[serde(rename = "P_expanded", default, skip_serializing_if = "Option::is_none")]
    p_expanded: Option<String>,
    #[serde(rename = "Q_expanded", default, skip_serializing_if = "Option::is_none")]
    q_expanded: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variables: Option<Vec<String>>,
    equations: Vec<EquationJson>,
}

/// `phi(u + e_i) / phi(u) = P_i(u) / Q_i(u + e_i)` read off factor by factor.
pub fn horn_from_ore_sato(phi: &OreSatoCoefficient) -> Result<HornSystem> {
    phi.validate()?;
    let n = phi.n;
    let mut pairs = Vec::new();
    for i in 0..n {
        let mut num: Vec<LinForm> = Vec::new();
        let mut den: Vec<LinForm> = Vec::new();
        let rising = |z: &LinForm, k: i64, top: &mut Vec<LinForm>, bottom: &mut Vec<LinForm>| {
            // Gamma(z + k) / Gamma(z)
            if k > 0 {
                for j in 0..k {
                    top.push(z.plus(&Rat::from_integer(j.into())));
                }
            } else {
                for j in 1..=-k {
                    bottom.push(z.plus(&Rat::from_integer((-j).into())));
                }
            }
        };
        for r in &phi.num_rows {
            let z = LinForm::from_ints(&r.a, -r.c.clone());
            rising(&z, r.a[i], &mut num, &mut den);
        }
        for r in &phi.den_rows {
            let z = LinForm::from_ints(&r.a, -r.c.clone());
            rising(&z, r.a[i], &mut den, &mut num);
        }
        for r in &phi.linear_factors {
            if r.a[i] != 0 {
                let l = LinForm::from_ints(&r.a, -r.c.clone());
                num.push(l.shift(&unit(n, i, 1)));
                den.push(l);
            }
        }
        let top = Factored::new(n, phi.t[i].clone(), num);
        let bottom = Factored::new(n, Rat::one(), den);
        let (p, q) = Factored::cancel(&top, &bottom);
        pairs.push((p, q.shift(&unit(n, i, -1))));
    }
    HornSystem::from_factored(n, pairs)
}

/// `R_i(s + e_j) R_j(s) = R_j(s + e_i) R_i(s)` with `R_i(s) = P_i(s) / Q_i(s + e_i)`,
/// cross-multiplied.
pub fn compatibility_check(h: &HornSystem) -> bool {
    let n = h.n;
    let e = |i: usize| unit(n, i, 1);
    let add = |a: &[Rat], b: &[Rat]| -> Vec<Rat> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    for i in 0..n {
        for j in i + 1..n {
            let (pi, qi) = (&h.equations[i].p.poly, &h.equations[i].q.poly);
            let (pj, qj) = (&h.equations[j].p.poly, &h.equations[j].q.poly);
            let eij = add(&e(i), &e(j));
            let lhs = &(&pi.shift(&e(j)) * pj) * &(&qj.shift(&eij) * &qi.shift(&e(i)));
            let rhs = &(&pj.shift(&e(i)) * pi) * &(&qi.shift(&eij) * &qj.shift(&e(j)));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `(x_i P_i(theta) - Q_i(theta)) y` for every equation.
pub fn verify_horn_solution(h: &HornSystem, y: &RationalFn) -> Result<Vec<RationalFn>> {
    if y.nvars() != h.n {
        return Err(Error::DimensionMismatch {
            expected: h.n,
            got: y.nvars(),
        });
    }
    let mut cache = ThetaCache::new(y);
    Ok(h.equations
        .iter()
        .enumerate()
        .map(|(i, e)| horn_residual(&mut cache, i, &e.p, &e.q))
        .collect())
}

pub fn is_solution(h: &HornSystem, y: &RationalFn) -> Result<bool> {
    Ok(verify_horn_solution(h, y)?.iter().all(|r| r.is_zero()))
}
