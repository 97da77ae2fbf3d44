//! Acceptance run: one PASS/FAIL line per criterion, exit status nonzero on
//! any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use horn_amoeba::algebra::poly::rat_to_f64;
use horn_amoeba::algebra::resultant::drop_var;
use horn_amoeba::algebra::{discriminant, essential_resultant, parse_default, parse_poly, ratio, MultiPoly, RationalFn};
use horn_amoeba::amoeba::{
    component_census, ronkin_pieces, spine, AmoebaGrid, CellState, Census, GridParams, LogConstant, LogValue,
    RonkinPiece, Verdict,
};
use horn_amoeba::geometry::{newton_polytope, LatticePolytope};
use horn_amoeba::horn::linform::theta_names;
use horn_amoeba::horn::screens::RankVerdict;
use horn_amoeba::horn::{
    bergman_kernel, catalog, horn_from_ore_sato, principal_symbols, rationality_screens, series_eval, symbol_resultant,
    verify_horn_solution, HornSystem,
};
use horn_amoeba::supports::{admissible_supports, horn_fan, k_i, SupportSpec, DEFAULT_WINDOW};
use horn_amoeba::Rat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn x(text: &str, n: usize) -> MultiPoly {
    parse_default(text, n).expect("test polynomial parses")
}

fn rf(num: &str, den: &str, n: usize) -> RationalFn {
    RationalFn::new(x(num, n), x(den, n)).expect("nonzero denominator")
}

fn vertex_set(p: &LatticePolytope) -> BTreeSet<Vec<i64>> {
    p.vertices().iter().cloned().collect()
}

fn orders(c: &Census) -> BTreeSet<Vec<i64>> {
    c.orders().into_iter().collect()
}

fn zero_residuals(h: &HornSystem, y: &RationalFn, name: &str) -> Result<(), String> {
    let res = verify_horn_solution(h, y).map_err(err)?;
    ensure!(res.iter().all(|r| r.is_zero()), "{}: nonzero residual {:?}", name, res);
    Ok(())
}

/// On every outside cell of a vertex component, that vertex's piece is the
/// largest.
fn pieces_majorize(grid: &AmoebaGrid, pieces: &[RonkinPiece]) -> Result<usize, String> {
    let mut checked = 0;
    for (lin, cell) in grid.cells.iter().enumerate() {
        let CellState::Outside { order } = cell else { continue };
        let Some(own) = pieces.iter().find(|p| &p.nu == order) else { continue };
        let t = grid.center(lin);
        let v = own.eval(&t);
        for p in pieces {
            ensure!(
                p.eval(&t) <= v + 1e-9,
                "at {:?} piece {:?} exceeds the component's piece {:?}",
                t,
                p.nu,
                own.nu
            );
        }
        checked += 1;
    }
    Ok(checked)
}

fn example_one() -> Outcome {
    let phi = catalog::pentagon_coefficient();
    let h = horn_from_ore_sato(&phi).map_err(err)?;
    let th = theta_names(2);
    let s = |e: &str| parse_poly(e, &th).unwrap();
    let printed = [
        ("(s1+s2)*(s1-2)", "(s1-1)*(s1-4)"),
        ("(s1+s2)*(s2-3)", "(s2-1)*(s2-5)"),
    ];
    for (eq, (p, q)) in h.equations.iter().zip(printed) {
        ensure!(eq.p.poly == s(p) && eq.q.poly == s(q), "system differs: {} / {}", eq.p.poly, eq.q.poly);
    }

    type Pred = fn(i64, i64) -> bool;
    let printed_supports: [Pred; 8] = [
        |a, b| (1..=2).contains(&a) && (1..=3).contains(&b),
        |a, b| a >= 4 && b >= 5,
        |a, b| b >= 5 && a + b <= 0,
        |a, b| a >= 4 && a + b <= 0,
        |a, b| a >= 4 && (1..=3).contains(&b),
        |a, b| a + b <= 0 && (1..=3).contains(&b),
        |a, b| (1..=2).contains(&a) && b >= 5,
        |a, b| (1..=2).contains(&a) && a + b <= 0,
    ];
    let w = 14;
    let points = |keep: &dyn Fn(i64, i64) -> bool| -> Vec<(i64, i64)> {
        (-w..=w).flat_map(|a| (-w..=w).map(move |b| (a, b))).filter(|&(a, b)| keep(a, b)).collect()
    };
    let mut want: Vec<Vec<(i64, i64)>> = printed_supports.iter().map(|p| points(p)).collect();
    let specs = admissible_supports(&h, &[Rat::from_integer(0.into()), Rat::from_integer(0.into())], DEFAULT_WINDOW)
        .map_err(err)?;
    let mut got: Vec<Vec<(i64, i64)>> = specs.iter().map(|sp| points(&|a, b| sp.contains(&[a, b]))).collect();
    want.sort();
    got.sort();
    ensure!(got == want, "supports differ from S1..S8 inside |s| <= {}", w);

    let sym = principal_symbols(&h).map_err(err)?;
    let r = symbol_resultant(&sym).map_err(err)?;
    ensure!(r == x("(x1*x2)^4*(1-x1)*(1-x2)*(1-x1-x2)", 2), "resultant {}", r);

    let y1 = RationalFn::from_poly(x(
        "3*x1*x2 + 4*x1*x2^2 + 3*x1*x2^3 + 3*x1^2*x2 + 6*x1^2*x2^2 + 6*x1^2*x2^3",
        2,
    ));
    let y5 = rf(
        "x1^4*x2*(6*x1^3*x2^2 + 6*x1^3*x2 - 27*x1^2*x2^2 + 3*x1^3 - 26*x1^2*x2 + 45*x1*x2^2 - 12*x1^2 + 40*x1*x2 \
         - 30*x2^2 + 15*x1 - 20*x2 - 6)",
        "(1-x1)^5",
        2,
    );
    let y7 = rf(
        "x1*x2^5*(6*x1*x2^2 - 18*x1*x2 + 3*x2^2 + 15*x1 - 8*x2 + 5)",
        "(1-x2)^4",
        2,
    );
    let y2 = rf("x1*x2*(6*x1^2 + 14*x1*x2 + 5*x2^2 - 9*x1 - 8*x2 + 3)", "(1-x1-x2)^4", 2)
        .sub(&y1)
        .sub(&y5)
        .add(&y7);
    for (y, name) in [(&y1, "y1"), (&y5, "y5"), (&y7, "y7"), (&y2, "y2")] {
        zero_residuals(&h, y, name)?;
    }
    Ok("system, S1..S8, resultant and y1, y2, y5, y7 exact".into())
}

fn fan_duality() -> Outcome {
    let fan = horn_fan(&catalog::pentagon_coefficient()).map_err(err)?;
    let pent = LatticePolytope::from_points(2, &[vec![0, 0], vec![2, 0], vec![2, 1], vec![1, 2], vec![0, 2]])
        .map_err(err)?;
    let nf = horn_amoeba::geometry::normal_fan(&pent).map_err(err)?;
    ensure!(fan.b_cones.len() == 5, "{} maximal cones", fan.b_cones.len());
    ensure!(fan.verdict.is_complete_fan(), "not a complete fan");
    for b in &fan.b_cones {
        ensure!(nf.maximal_cones.iter().any(|c| c.same_as(b)), "cone {} is not a pentagon normal cone", b);
    }
    for c in &nf.maximal_cones {
        ensure!(fan.b_cones.iter().any(|b| b.same_as(c)), "normal cone {} missing", c);
    }
    Ok("5 cones = normal fan of the pentagon".into())
}

fn bergman_three_two() -> Outcome {
    let k = bergman_kernel(&[3, 2]).map_err(err)?;
    let cf = k.closed_form.clone().map_err(err)?;
    let f = x("1 - 2*x1 - 3*x2 + x1^2 - 6*x1*x2 + 3*x2^2 - x2^3", 2);
    let cube = f.pow(3);
    let (_, den) = cf.den().strip_monomial();
    let c = den.constant_term() / cube.constant_term();
    ensure!(den == cube.scale(&c), "denominator {} is not a unit times f^3", cf.den());

    let pt = [Complex64::new(0.05, 0.0), Complex64::new(0.05, 0.0)];
    let s = series_eval(&k.coefficient, &SupportSpec::orthant(2), &pt, 60).map_err(err)?;
    let exact = rat_to_f64(&cf.eval(&[ratio(1, 20), ratio(1, 20)]).ok_or("pole at the sample point")?);
    let gap = (s.value - Complex64::new(exact, 0.0)).norm();
    ensure!(gap < 1e-8, "series {} vs closed form {}: gap {:e}", s.value, exact, gap);

    let (_, census) = component_census(&cube, &GridParams::default()).map_err(err)?;
    let np = newton_polytope(&cube).map_err(err)?;
    ensure!(census.verdict == Verdict::Solid, "verdict {:?}", census.verdict);
    ensure!(census.components.len() == 3, "{} components", census.components.len());
    ensure!(orders(&census) == vertex_set(&np), "orders {:?}", census.orders());
    Ok(format!("f^3 denominator, series gap {:.1e}, 3 components solid", gap))
}

fn cardano() -> Outcome {
    let phi = catalog::cubic_default();
    let h = horn_from_ore_sato(&phi).map_err(err)?;
    let sym = principal_symbols(&h).map_err(err)?;
    let names = sym.names();
    let printed_h = [
        "x1*(2*x1*z1 + x2*z2)^2*(x1*z1 + 2*x2*z2) - 27*(x1*z1)^3",
        "x2*(2*x1*z1 + x2*z2)*(x1*z1 + 2*x2*z2)^2 - 27*(x2*z2)^3",
    ];
    for (got, want) in sym.h.iter().zip(printed_h) {
        ensure!(*got == parse_poly(want, &names).map_err(err)?, "symbol {}", got);
    }

    let r = symbol_resultant(&sym).map_err(err)?;
    let printed = x(
        "x1^9*x2^9*(x1^2*x2^2 + 64*x1^3 - 24*x1^2*x2 - 24*x1*x2^2 + 64*x2^3 - 1296*x1^2 + 4698*x1*x2 \
         - 1296*x2^2 + 8748*x1 + 8748*x2 - 19683)",
        2,
    );
    // The printed polynomial is primitive; the Sylvester resultant carries
    // the content -3^9.
    ensure!(r == printed.scale(&Rat::from_integer((-19683).into())), "resultant {}", r);
    ensure!(r.primitive() == printed || r.primitive() == -printed.clone(), "primitive part differs");

    let ess = essential_resultant(&r);
    let np = newton_polytope(&ess).map_err(err)?;
    let want: BTreeSet<Vec<i64>> = [vec![0, 0], vec![3, 0], vec![0, 3], vec![2, 2]].into_iter().collect();
    ensure!(vertex_set(&np) == want, "Newton vertices {:?}", np.vertices());

    let params = GridParams::default().with_box(-8.0, 8.0, 2).with_resolution(200);
    let (_, census) = component_census(&ess, &params).map_err(err)?;
    ensure!(census.verdict == Verdict::Solid, "verdict {:?}", census.verdict);
    ensure!(census.components.len() == 4, "{} components", census.components.len());
    ensure!(orders(&census) == want, "orders {:?}", census.orders());

    let sc = rationality_screens(&phi).map_err(err)?;
    ensure!(sc.rank_a == 2, "rank A = {}", sc.rank_a);
    ensure!(matches!(sc.rank_verdict, RankVerdict::CannotBeRational { .. }), "{:?}", sc.rank_verdict);
    ensure!(sc.fan_cones == 4 && sc.admissible_count <= 3 && sc.too_few_supports, "{:?}", sc);
    Ok(format!(
        "symbols, resultant = -3^9 * printed (primitive parts equal), 4 components solid, {} admissible < 4 cones",
        sc.admissible_count
    ))
}

fn quartic() -> Outcome {
    let names: Vec<String> = ["x1", "x2", "x3", "y"].iter().map(|s| s.to_string()).collect();
    let eq = parse_poly("y^4 + x1*y^3 + x2*y^2 + x3*y - 1", &names).map_err(err)?;
    let d = drop_var(&discriminant(&eq, 3).map_err(err)?, 3);
    let printed = x(
        "x1^2*x2^2*x3^2 - 4*x1^3*x3^3 + 4*x1^2*x2^3 - 4*x2^3*x3^2 - 18*x1^3*x2*x3 + 18*x1*x2*x3^3 - 27*x1^4 \
         - 16*x2^4 - 27*x3^4 + 80*x1*x2^2*x3 + 6*x1^2*x3^2 + 144*x1^2*x2 - 144*x2*x3^2 - 192*x1*x3 - 128*x2^2 - 256",
        3,
    );
    ensure!(d == printed || d == -printed.clone(), "discriminant {}", d);

    let np = newton_polytope(&d).map_err(err)?;
    let fig: BTreeSet<Vec<i64>> = [
        [0, 4, 0],
        [2, 3, 0],
        [4, 0, 0],
        [0, 0, 4],
        [2, 2, 2],
        [0, 3, 2],
        [3, 0, 3],
        [0, 0, 0],
    ]
    .iter()
    .map(|v| v.to_vec())
    .collect();
    ensure!(vertex_set(&np) == fig, "vertices {:?}", np.vertices());

    let params = GridParams::default().with_box(-8.0, 8.0, 3).with_resolution(48);
    let (grid, census) = component_census(&d, &params).map_err(err)?;
    let census_note = match census.verdict {
        Verdict::Inconclusive => format!(
            "census inconclusive ({:.1}% unknown), refine",
            100.0 * census.unknown_fraction
        ),
        _ => {
            ensure!(census.verdict == Verdict::Solid, "verdict {:?}", census.verdict);
            ensure!(census.components.len() == 8, "{} components", census.components.len());
            ensure!(orders(&census) == fig, "orders {:?}", census.orders());
            "8 components solid".into()
        }
    };

    let (pieces, _) = ronkin_pieces(&d, &census).map_err(err)?;
    let expected: [([i64; 3], (i64, i64)); 8] = [
        ([0, 0, 0], (8, 0)),
        ([4, 0, 0], (0, 3)),
        ([0, 4, 0], (4, 0)),
        ([0, 0, 4], (0, 3)),
        ([2, 3, 0], (2, 0)),
        ([3, 0, 3], (2, 0)),
        ([0, 3, 2], (2, 0)),
        ([2, 2, 2], (0, 0)),
    ];
    ensure!(pieces.len() == 8, "{} pieces", pieces.len());
    for (nu, (a, b)) in expected {
        let p = pieces.iter().find(|p| p.nu == nu).ok_or(format!("no piece for {:?}", nu))?;
        ensure!(p.exact == Some(LogConstant::new(a, b)), "piece {:?} has {:?}", nu, p.exact);
    }
    let majorized = pieces_majorize(&grid, &pieces)?;

    let sp = spine(&pieces).map_err(err)?;
    ensure!(sp.certified, "spine not certified");
    let t = [LogValue::log2(3), LogValue::log2(4), LogValue::log2(3)];
    let mut tie = sp.maximizers_at(&t).map_err(err)?;
    tie.sort();
    let tie_nus: BTreeSet<Vec<i64>> = tie.iter().map(|&k| pieces[k].nu.clone()).collect();
    let five: BTreeSet<Vec<i64>> = [[0, 4, 0], [2, 3, 0], [3, 0, 3], [0, 3, 2], [2, 2, 2]]
        .iter()
        .map(|v| v.to_vec())
        .collect();
    ensure!(tie_nus == five, "maximizers at (3,4,3) log2: {:?}", tie_nus);
    let (cell, dual) = sp.cell_with_members(&tie).ok_or("no spine cell for the 5-way tie")?;
    ensure!(cell.exact_value == Some(LogValue::log2(20)), "tie value {:?}", cell.exact_value);
    ensure!(
        cell.exact_point.as_deref() == Some(&t[..]),
        "tie point {:?}",
        cell.exact_point
    );
    let dv: BTreeSet<Vec<i64>> = dual.vertices.iter().cloned().collect();
    ensure!(dv == five && !dual.simplicial, "dual cell {:?} simplicial={}", dv, dual.simplicial);
    ensure!(sp.dual_volume() == np.volume(), "dual volume {} vs {}", sp.dual_volume(), np.volume());
    Ok(format!(
        "discriminant, 8 vertices, exact pieces, 5-way tie at 20*log2 non-simplicial, {}, pieces majorize on {} cells",
        census_note, majorized
    ))
}

fn fan_counterexample() -> Outcome {
    let fan = horn_fan(&catalog::non_fan_rows()).map_err(err)?;
    ensure!(!fan.verdict.is_complete_fan(), "verdict says complete fan");
    let pairs = fan.witness_selections();
    let hit = pairs.iter().any(|(a, b)| {
        let (mut a, mut b) = (a.clone(), b.clone());
        a.sort();
        b.sort();
        (a == [0, 3, 4] && b == [1, 3, 4]) || (a == [1, 3, 4] && b == [0, 3, 4])
    });
    ensure!(hit, "witness pairs {:?}", pairs);
    Ok("not a fan, witness I=(1,4,5) / I=(2,4,5)".into())
}

fn non_bergman() -> Outcome {
    let phi = catalog::non_bergman_coefficient(3, 2);
    let pt = [Complex64::new(0.1, 0.0), Complex64::new(0.05, 0.0), Complex64::new(0.05, 0.0)];
    let s = series_eval(&phi, &SupportSpec::orthant(3), &pt, 60).map_err(err)?;
    let exact = 1.0 / ((1.0f64 - 0.1).powi(2) - 0.1);
    let gap = (s.value - Complex64::new(exact, 0.0)).norm();
    ensure!(gap < 1e-8, "series {} vs {}: gap {:e}", s.value, exact, gap);
    let h = horn_from_ore_sato(&phi).map_err(err)?;
    zero_residuals(&h, &rf("1", "(1-x1)^2 - x2 - x3", 3), "closed form")?;
    Ok(format!("series gap {:.1e}, closed form solves the system", gap))
}

fn repeat(count: usize, mut check: impl FnMut(u64) -> Result<(), String>) -> Result<(), String> {
    for seed in 0..count as u64 {
        check(seed).map_err(|e| format!("seed {}: {}", seed, e))?;
    }
    Ok(())
}

fn properties() -> Outcome {
    use common::*;
    const N: usize = 200;
    let rng = |seed: u64| ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    repeat(N, |s| {
        let mut r = rng(s);
        let n = 1 + (s % 3) as usize;
        let (f, g, h) = (random_in_first_var(&mut r, n), random_in_first_var(&mut r, n), random_in_first_var(&mut r, n));
        resultant_multiplicative(&f, &g, &h)
    })
    .map_err(|e| format!("resultant: {}", e))?;
    repeat(N, |s| dual_is_involutive(&random_cone(&mut rng(s)))).map_err(|e| format!("dual: {}", e))?;
    repeat(N, |s| {
        let mut r = rng(s);
        let p = random_polytope(&mut r);
        let probes: Vec<Vec<i64>> = (0..8).map(|_| (0..p.nvars()).map(|_| r.gen_range(-5..=5)).collect()).collect();
        normal_fan_covers(&p, &probes)
    })
    .map_err(|e| format!("normal fan: {}", e))?;
    repeat(N, |s| {
        let mut r = rng(s);
        let f = random_sparse_poly(&mut r);
        let probes: Vec<Vec<f64>> = (0..6).map(|_| vec![r.gen_range(-6.0..6.0), r.gen_range(-6.0..6.0)]).collect();
        orders_in_newton_polytope(&f, 12, &probes, s)
    })
    .map_err(|e| format!("orders: {}", e))?;

    let draw = |s: u64, max_n: usize| {
        let mut r = rng(s);
        loop {
            if let Some(p) = random_coefficient(&mut r, max_n) {
                return p;
            }
        }
    };
    repeat(N, |s| horn_system_is_compatible(&draw(s, 3))).map_err(|e| format!("compatibility: {}", e))?;
    let (mut supports, mut infinite) = (0, 0);
    repeat(N, |s| {
        match supports_recheck(&draw(s, 2), 8)? {
            Some(k) => supports += k,
            None => infinite += 1,
        }
        Ok(())
    })
    .map_err(|e| format!("supports: {}", e))?;

    let cases = abel_cases();
    repeat(N, |s| abel_cone_matches_component(&cases[s as usize % cases.len()], &mut rng(s), s))
        .map_err(|e| format!("abel: {}", e))?;
    Ok(format!(
        "7 suites x {} instances; {} supports rechecked, {} systems rejected with infinitely many supports",
        N, supports, infinite
    ))
}

fn abel_cases() -> Vec<common::AbelCase> {
    let phi = catalog::pentagon_coefficient();
    let r = x("(1-x1)*(1-x2)*(1-x1-x2)", 2);
    let np = newton_polytope(&r).unwrap();
    let fan = horn_fan(&phi).unwrap();
    let mut out: Vec<common::AbelCase> = fan
        .index_map
        .iter()
        .zip(&fan.b_cones)
        .map(|(ids, b)| common::AbelCase {
            name: "pentagon",
            f: r.clone(),
            support: k_i(&phi, &ids[0]).unwrap(),
            order: np.vertices().iter().find(|v| np.normal_cone(v).same_as(b)).unwrap().clone(),
        })
        .collect();
    out.push(common::AbelCase {
        name: "bergman (3,2)",
        f: x("1 - 2*x1 - 3*x2 + x1^2 - 6*x1*x2 + 3*x2^2 - x2^3", 2),
        support: SupportSpec::orthant(2),
        order: vec![0, 0],
    });
    out.push(common::AbelCase {
        name: "non-bergman n=3 p=2",
        f: x("(1-x1)^2 - x2 - x3", 3),
        support: SupportSpec::orthant(3),
        order: vec![0, 0, 0],
    });
    out
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 8] = [
        ("pentagon pipeline", Some(5), example_one),
        ("fan duality", Some(5), fan_duality),
        ("bergman (3,2)", Some(120), bergman_three_two),
        ("cardano", Some(180), cardano),
        ("quartic discriminant", Some(1200), quartic),
        ("fan counterexample", Some(1), fan_counterexample),
        ("non-bergman series", Some(30), non_bergman),
        ("property suites", None, properties),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let dt = start.elapsed();
        if let (Ok(_), Some(b)) = (&out, budget) {
            if dt > Duration::from_secs(*b) {
                out = Err(format!("took {:.1} s, budget {} s", dt.as_secs_f64(), b));
            }
        }
        let budget = budget.map(|b| format!(", budget {} s", b)).unwrap_or_default();
        match out {
            Ok(detail) => println!("criterion {} PASS {} ({:.2} s{}): {}", k + 1, name, dt.as_secs_f64(), budget, detail),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {} ({:.2} s{}): {}", k + 1, name, dt.as_secs_f64(), budget, why)
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
