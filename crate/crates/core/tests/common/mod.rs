//! Random instance generators and property checks shared by the property
//! suite and the acceptance harness.
#![allow(dead_code)]

use horn_amoeba::algebra::{rat, univariate_resultant, MultiPoly};
use horn_amoeba::amoeba::{component_census, membership, GridParams, Membership, MembershipParams};
use horn_amoeba::geometry::{dual_cone, fan_check, newton_polytope, normal_fan, IntCone, LatticePolytope};
use horn_amoeba::horn::{compatibility_check, horn_from_ore_sato, GammaRow, OreSatoCoefficient};
use horn_amoeba::supports::{admissible_supports, recheck_support, two_sided_abel_bounds, SupportSpec};
use horn_amoeba::{Error, Rat};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

fn small(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

fn nonzero(rng: &mut ChaCha8Rng, m: i64) -> i64 {
    loop {
        let v = small(rng, -m, m);
        if v != 0 {
            return v;
        }
    }
}

/// Polynomial in `nvars` variables of degree `1..=2` in `x1` whose
/// coefficients are affine in the remaining variables.
pub fn random_in_first_var(rng: &mut ChaCha8Rng, nvars: usize) -> MultiPoly {
    let d = small(rng, 1, 2) as i32;
    let mut terms = Vec::new();
    for k in 0..=d {
        let mut e = vec![0i32; nvars];
        e[0] = k;
        let c0 = if k == d { nonzero(rng, 3) } else { small(rng, -3, 3) };
        terms.push((e.clone(), rat(c0)));
        for j in 1..nvars {
            let mut e = e.clone();
            e[j] = 1;
            terms.push((e, rat(small(rng, -2, 2))));
        }
    }
    MultiPoly::from_terms(nvars, terms.into_iter().filter(|(_, c)| *c != rat(0)))
}

pub fn resultant_multiplicative(f: &MultiPoly, g: &MultiPoly, h: &MultiPoly) -> Check {
    let fg = f * g;
    let lhs = univariate_resultant(&fg, h, 0).map_err(|e| e.to_string())?;
    let a = univariate_resultant(f, h, 0).map_err(|e| e.to_string())?;
    let b = univariate_resultant(g, h, 0).map_err(|e| e.to_string())?;
    if lhs == &a * &b {
        Ok(())
    } else {
        Err(format!("Res(fg,h) != Res(f,h) Res(g,h) for f={} g={} h={}", f, g, h))
    }
}

pub fn random_cone(rng: &mut ChaCha8Rng) -> IntCone {
    let n = small(rng, 1, 3) as usize;
    let k = small(rng, 1, 4) as usize;
    let gens: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| small(rng, -3, 3)).collect()).collect();
    IntCone::from_generators(n, &gens)
}

pub fn dual_is_involutive(c: &IntCone) -> Check {
    let dd = dual_cone(&dual_cone(c));
    if dd.same_as(c) {
        Ok(())
    } else {
        Err(format!("dual(dual({})) = {}", c, dd))
    }
}

pub fn random_polytope(rng: &mut ChaCha8Rng) -> LatticePolytope {
    loop {
        let n = small(rng, 2, 3) as usize;
        let k = small(rng, n as i64 + 1, 7) as usize;
        let pts: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| small(rng, -3, 3)).collect()).collect();
        if let Ok(p) = LatticePolytope::from_points(n, &pts) {
            if p.is_full_dimensional() {
                return p;
            }
        }
    }
}

/// The normal fan is complete, and every probe direction lies in the cone of
/// a vertex maximizing it (and in no cone of a non-maximizing vertex).
pub fn normal_fan_covers(p: &LatticePolytope, probes: &[Vec<i64>]) -> Check {
    let fan = normal_fan(p).map_err(|e| e.to_string())?;
    let verdict = fan_check(&fan.maximal_cones).map_err(|e| e.to_string())?;
    if !verdict.is_complete_fan() {
        return Err(format!("normal fan of {:?} is not complete: {:?}", p.vertices(), verdict));
    }
    for w in probes {
        let dot = |v: &Vec<i64>| v.iter().zip(w).map(|(a, b)| a * b).sum::<i64>();
        let best = p.vertices().iter().map(dot).max().unwrap();
        for (v, c) in p.vertices().iter().zip(&fan.maximal_cones) {
            if c.contains(w) != (dot(v) == best) {
                return Err(format!("probe {:?} vs vertex {:?} of {:?}", w, v, p.vertices()));
            }
        }
    }
    Ok(())
}

/// Two-variable polynomial with 2..=4 terms, not a monomial.
pub fn random_sparse_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    loop {
        let k = small(rng, 2, 4);
        let terms: Vec<(Vec<i32>, Rat)> = (0..k)
            .map(|_| (vec![small(rng, 0, 2) as i32, small(rng, 0, 2) as i32], rat(nonzero(rng, 3))))
            .collect();
        let f = MultiPoly::from_terms(2, terms);
        if f.num_terms() >= 2 {
            return f;
        }
    }
}

fn lopsided_term(f: &MultiPoly, t: &[f64]) -> Option<Vec<i64>> {
    let mods: Vec<(Vec<i64>, f64)> = f
        .terms()
        .map(|(m, c)| {
            let e: Vec<i64> = m.0.iter().map(|&v| v as i64).collect();
            let lg = e.iter().zip(t).map(|(a, b)| *a as f64 * b).sum::<f64>();
            (e, horn_amoeba::algebra::poly::rat_to_f64(c).abs().ln() + lg)
        })
        .collect();
    let (i, top) = mods.iter().enumerate().max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))?;
    let rest: f64 = mods.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| (m.1 - top.1).exp()).sum();
    (rest < 0.5).then(|| top.0.clone())
}

/// Census orders lie in the Newton polytope and are pairwise distinct;
/// each probe point where one term dominates the others by a factor two
/// is outside with that term's exponent as its order.
pub fn orders_in_newton_polytope(f: &MultiPoly, resolution: usize, probes: &[Vec<f64>], seed: u64) -> Check {
    let np = newton_polytope(f).map_err(|e| e.to_string())?;
    let params = GridParams {
        resolution: Some(resolution),
        seed,
        ..GridParams::default()
    };
    let (_, census) = component_census(f, &params).map_err(|e| e.to_string())?;
    let orders = census.orders();
    for (k, o) in orders.iter().enumerate() {
        if !np.contains(o) {
            return Err(format!("order {:?} of {} not in the Newton polytope", o, f));
        }
        if orders[..k].contains(o) {
            return Err(format!("order {:?} of {} appears twice", o, f));
        }
    }
    let mp = MembershipParams::default();
    for t in probes {
        if let Some(nu) = lopsided_term(f, t) {
            match membership(f, t, &mp, seed).map_err(|e| e.to_string())? {
                Membership::Outside { order, .. } if order == nu => {}
                other => return Err(format!("{} at {:?}: lopsided term {:?}, got {:?}", f, t, nu, other)),
            }
        }
    }
    Ok(())
}

/// Nonconfluent coefficient with `n <= 3` variables, `n + 1` to
/// `min(n + 3, 5)` Gamma rows and entries of size at most 3, or `None` when
/// the draw is degenerate.
pub fn random_coefficient(rng: &mut ChaCha8Rng, max_n: usize) -> Option<OreSatoCoefficient> {
    let n = small(rng, 1, max_n as i64) as usize;
    let k = small(rng, n as i64 + 1, (n as i64 + 3).min(5)) as usize;
    let mut rows: Vec<Vec<i64>> = (0..k - 1).map(|_| (0..n).map(|_| small(rng, -2, 2)).collect()).collect();
    let last: Vec<i64> = (0..n).map(|j| -rows.iter().map(|r| r[j]).sum::<i64>()).collect();
    rows.push(last);
    if rows.iter().any(|r| r.iter().all(|&v| v == 0)) || rows[k - 1].iter().any(|v| v.abs() > 3) {
        return None;
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    for a in rows {
        let c = Rat::new(small(rng, -6, 6).into(), small(rng, 1, 3).into());
        if rng.gen_bool(0.4) {
            // Gamma(<A,u> - c) in the numerator equals 1/Gamma(<-A,u> + 1 + c)
            // up to a periodic factor.
            den.push(GammaRow::new(a.iter().map(|v| -v).collect(), -c - rat(1)));
        } else {
            num.push(GammaRow::new(a, c));
        }
    }
    let mut phi = OreSatoCoefficient::gamma_ratio(n, num, den);
    phi.t = (0..n).map(|_| rat(nonzero(rng, 3))).collect();
    phi.validate().ok()?;
    Some(phi)
}

pub fn horn_system_is_compatible(phi: &OreSatoCoefficient) -> Check {
    let h = horn_from_ore_sato(phi).map_err(|e| format!("{}: {}", phi.to_json(), e))?;
    if compatibility_check(&h) {
        Ok(())
    } else {
        Err(format!("incompatible system from {}", phi.to_json()))
    }
}

/// Every admissible support passes the brute-force boundary re-check.
/// Returns the number of supports checked, or `None` when the system is
/// rejected for having infinitely many supports.
pub fn supports_recheck(phi: &OreSatoCoefficient, window: i64) -> Result<Option<usize>, String> {
    let h = horn_from_ore_sato(phi).map_err(|e| e.to_string())?;
    let specs = match admissible_supports(&h, &phi.gamma_or_zero(), window) {
        Ok(s) => s,
        Err(Error::Unsupported(m)) if m.contains("infinitely many") => return Ok(None),
        Err(e) => return Err(format!("{}: {}", phi.to_json(), e)),
    };
    for s in &specs {
        if let Some(v) = recheck_support(&h, s, window).map_err(|e| e.to_string())? {
            return Err(format!("support with witness {:?} of {}: {}", s.witness, phi.to_json(), v));
        }
    }
    Ok(Some(specs.len()))
}

/// A rational solution's support paired with the amoeba component its
/// series converges on.
pub struct AbelCase {
    pub name: &'static str,
    pub f: MultiPoly,
    pub support: SupportSpec,
    pub order: Vec<i64>,
}

/// The Abel cone of the support equals the normal cone of the Newton
/// polytope at the component's order, and far points along random
/// directions of that cone keep the component's order.
pub fn abel_cone_matches_component(case: &AbelCase, rng: &mut ChaCha8Rng, seed: u64) -> Check {
    let b = two_sided_abel_bounds(&case.support).map_err(|e| e.to_string())?;
    let np = newton_polytope(&case.f).map_err(|e| e.to_string())?;
    let nc = np.normal_cone(&case.order);
    if !b.same_as(&nc) {
        return Err(format!("{}: Abel cone {} but the component recedes along {}", case.name, b, nc));
    }
    let gens = b.generators();
    let n = case.f.nvars();
    let mut dir = vec![0f64; n];
    for g in gens {
        let w: f64 = rng.gen_range(0.05..1.0);
        for (d, v) in dir.iter_mut().zip(g) {
            *d += w * *v as f64;
        }
    }
    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Ok(());
    }
    let t: Vec<f64> = dir.iter().map(|v| 40.0 * v / norm).collect();
    match membership(&case.f, &t, &MembershipParams::default(), seed).map_err(|e| e.to_string())? {
        Membership::Outside { order, .. } if order == case.order => Ok(()),
        other => Err(format!("{}: far point {:?} gives {:?}", case.name, t, other)),
    }
}
