//! Shift vectors `gamma_I`, the cones `K_I`, `C_I` and the fan they induce.

use serde::{Deserialize, Serialize};

use super::spec::SupportSpec;
use crate::error::{Error, Result};
use crate::geometry::cone::subsets;
use crate::geometry::linalg::{dot_rat, rank_i64, solve, to_rat};
use crate::geometry::{fan_check, FanVerdict, FanWitness, Inequality, IntCone, Sense};
use crate::horn::coefficient::{nonconfluency_check, GammaRow, OreSatoCoefficient};
use crate::Rat;

fn pick(rows: &[GammaRow], idx: &[usize]) -> Result<Vec<GammaRow>> {
    idx.iter()
        .map(|&i| {
            rows.get(i)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("row index {} out of range ({} rows)", i, rows.len())))
        })
        .collect()
}

/// Solution of `<A_i, s> = c_i` for the selected canonical rows (0-based).
pub fn gamma_i(phi: &OreSatoCoefficient, idx: &[usize]) -> Result<Vec<Rat>> {
    let n = phi.n;
    if idx.len() != n {
        return Err(Error::Invalid(format!("expected {} row indices, got {}", n, idx.len())));
    }
    let rows = pick(&phi.canonical_rows(), idx)?;
    let a: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat(&r.a)).collect();
    let c: Vec<Rat> = rows.iter().map(|r| r.c.clone()).collect();
    solve(&a, &c).ok_or_else(|| Error::Singular(format!("rows {:?} are linearly dependent", idx)))
}

/// `{ s : <A_i, s + gamma_I> - c_i <= 0, i in I }`.
pub fn k_i(phi: &OreSatoCoefficient, idx: &[usize]) -> Result<SupportSpec> {
    let gamma = gamma_i(phi, idx)?;
    let rows = pick(&phi.canonical_rows(), idx)?;
    let cons = rows
        .iter()
        .map(|r| Inequality::new(r.a.clone(), r.c.clone(), Sense::Le))
        .collect();
    SupportSpec::with_witness(gamma, cons, vec![0; phi.n])
}

/// `{ s : <A_i, s> <= 0, i in I }`.
pub fn c_i(rows: &[GammaRow], idx: &[usize], n: usize) -> IntCone {
    let hs: Vec<Vec<i64>> = idx.iter().map(|&i| rows[i].a.iter().map(|x| -x).collect()).collect();
    IntCone::from_halfspaces(n, &hs)
}

/// Independent `n`-subsets of the canonical rows, 0-based.
pub fn independent_selections(phi: &OreSatoCoefficient) -> Vec<Vec<usize>> {
    let rows = phi.canonical_rows();
    subsets(rows.len(), phi.n)
        .into_iter()
        .filter(|idx| {
            let m: Vec<Vec<i64>> = idx.iter().map(|&i| rows[i].a.clone()).collect();
            rank_i64(&m, phi.n) == phi.n
        })
        .collect()
}

/// Incidences `(I, j)` where the hyperplane of row `j` meets `Z^n + gamma_I`.
pub fn nongeneric_incidences(phi: &OreSatoCoefficient) -> Vec<(Vec<usize>, usize)> {
    let rows = phi.canonical_rows();
    let mut out = Vec::new();
    for idx in independent_selections(phi) {
        let g = gamma_i(phi, &idx).expect("independent rows");
        for (j, r) in rows.iter().enumerate() {
            if idx.contains(&j) {
                continue;
            }
            let v = &r.c - dot_rat(&r.a, &g);
            let d = r.a.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
            if (v / Rat::from_integer(d.into())).is_integer() {
                out.push((idx.clone(), j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HornFan {
    pub nvars: usize,
    /// `B_j = -C_{I(j)}^dual`.
    pub b_cones: Vec<IntCone>,
    /// The maximal support cones `C_{I(j)}`.
    pub c_cones: Vec<IntCone>,
    /// Every 0-based row selection producing each maximal cone.
    pub index_map: Vec<Vec<Vec<usize>>>,
    pub verdict: FanVerdict,
}

impl HornFan {
    /// Pairs of row selections behind each pairwise witness.
    pub fn witness_selections(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        if let FanVerdict::NotAFan { witnesses } = &self.verdict {
            for w in witnesses {
                if let FanWitness::Overlap { i, j } | FanWitness::NotAFace { i, j } = w {
                    for a in &self.index_map[*i] {
                        for b in &self.index_map[*j] {
                            out.push((a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rays(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.b_cones.iter().flat_map(|c| c.generators().to_vec()).collect();
        out.sort();
        out.dedup();
        out
    }
}

pub fn horn_fan(phi: &OreSatoCoefficient) -> Result<HornFan> {
    phi.validate()?;
    if !nonconfluency_check(phi) {
        return Err(Error::Invalid("the fan is defined for nonconfluent coefficients only".into()));
    }
    let n = phi.n;
    let rows = phi.canonical_rows();
    let mut cones: Vec<(IntCone, Vec<Vec<usize>>)> = Vec::new();
    for idx in independent_selections(phi) {
        let c = c_i(&rows, &idx, n);
        match cones.iter_mut().find(|(d, _)| d.same_as(&c)) {
            Some((_, ids)) => ids.push(idx),
            None => cones.push((c, vec![idx])),
        }
    }
    let maximal: Vec<(IntCone, Vec<Vec<usize>>)> = cones
        .iter()
        .filter(|(c, _)| !cones.iter().any(|(d, _)| !d.same_as(c) && c.is_subset_of(d)))
        .cloned()
        .collect();
    let b_cones: Vec<IntCone> = maximal.iter().map(|(c, _)| c.dual().neg()).collect();
    let verdict = fan_check(&b_cones)?;
    Ok(HornFan {
        nvars: n,
        c_cones: maximal.iter().map(|(c, _)| c.clone()).collect(),
        index_map: maximal.into_iter().map(|(_, ids)| ids).collect(),
        b_cones,
        verdict,
    })
}

/// The cone `-C^dual` that `Log` of the convergence domain recedes along.
pub fn two_sided_abel_bounds(s: &SupportSpec) -> Result<IntCone> {
    if !s.cone.is_strongly_convex() {
        return Err(Error::Invalid(format!(
            "divergent: the support cone {} contains a line, so the series has an empty convergence domain",
            s.cone
        )));
    }
    Ok(s.cone.dual().neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};
    use crate::horn::catalog;
    use num_traits::Zero;

    fn zeros(n: usize) -> Vec<Rat> {
        vec![Rat::zero(); n]
    }

    #[test]
    fn gamma_of_unit_rows() {
        let phi = OreSatoCoefficient::gamma_ratio(
            2,
            vec![GammaRow::new(vec![1, 0], rat(0)), GammaRow::new(vec![0, 1], rat(0))],
            vec![GammaRow::new(vec![1, 1], rat(0))],
        );
        assert_eq!(gamma_i(&phi, &[0, 1]).unwrap(), zeros(2));
        let k = k_i(&phi, &[0, 1]).unwrap();
        assert!(k.cone.same_as(&IntCone::orthant(2).neg()));
    }

    #[test]
    fn cubic_gamma_and_cone() {
        let phi = catalog::cubic_default();
        let g = gamma_i(&phi, &[0, 1]).unwrap();
        let rows = phi.canonical_rows();
        for r in &rows[..2] {
            assert_eq!(dot_rat(&r.a, &g), r.c);
        }
        assert_eq!(g[0], (ratio(-2, 5) + ratio(1, 7)) / rat(3));
        let k = k_i(&phi, &[0, 1]).unwrap();
        assert!(k.cone.same_as(&IntCone::from_generators(2, &[vec![1, -2], vec![-2, 1]])));
        assert!(k.cone.is_strongly_convex());
    }

    #[test]
    fn dependent_rows_are_singular() {
        let phi = OreSatoCoefficient::gamma_ratio(
            2,
            vec![GammaRow::new(vec![1, 1], rat(0)), GammaRow::new(vec![2, 2], rat(0))],
            vec![GammaRow::new(vec![1, 0], rat(0)), GammaRow::new(vec![2, 3], rat(0))],
        );
        assert!(matches!(gamma_i(&phi, &[0, 1]), Err(Error::Singular(_))));
    }

    #[test]
    fn abel_bounds() {
        let q = SupportSpec::orthant(2);
        assert!(two_sided_abel_bounds(&q).unwrap().same_as(&IntCone::orthant(2).neg()));
        let ray = SupportSpec::with_witness(
            zeros(2),
            vec![
                Inequality::new(vec![1, 0], rat(4), Sense::Ge),
                Inequality::new(vec![0, 1], rat(1), Sense::Ge),
                Inequality::new(vec![0, 1], rat(3), Sense::Le),
            ],
            vec![4, 1],
        )
        .unwrap();
        let b = two_sided_abel_bounds(&ray).unwrap();
        assert!(b.same_as(&IntCone::from_halfspaces(2, &[vec![-1, 0]])));
        let plane = SupportSpec::with_witness(zeros(2), vec![], vec![0, 0]).unwrap();
        assert!(two_sided_abel_bounds(&plane).is_err());
    }

    #[test]
    fn pentagon_fan() {
        let f = horn_fan(&catalog::pentagon_coefficient()).unwrap();
        assert_eq!(f.b_cones.len(), 5);
        assert!(f.verdict.is_complete_fan());
        assert_eq!(f.rays(), vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn five_rows_do_not_form_a_fan() {
        let f = horn_fan(&catalog::non_fan_rows()).unwrap();
        assert!(!f.verdict.is_complete_fan());
        let pairs = f.witness_selections();
        let want = (vec![0, 3, 4], vec![1, 3, 4]);
        assert!(
            pairs.iter().any(|(a, b)| (a, b) == (&want.0, &want.1) || (b, a) == (&want.0, &want.1)),
            "{:?}",
            pairs
        );
    }
}
