//! One function per subcommand; each returns the stdout JSON and the files
//! to write.

use serde::Serialize;
use serde_json::{json, Value};

use super::render::{render_svg, Artifact};
use super::{read_input, CliError, Command, JobConfig, Outcome, Source};
use crate::algebra::parse::{identifiers, parse_poly};
use crate::algebra::resultant::drop_var;
use crate::algebra::{discriminant, essential_resultant, parse_default, MultiPoly, RationalFn};
use crate::amoeba::{
    component_census, default_radius, ronkin_pieces, spine, vertex_pieces, GridParams, Verdict,
};
use crate::geometry::{newton_polytope, LatticePolytope};
use crate::horn::bergman::NORMALIZATION_NOTE;
use crate::horn::{
    bergman_kernel, compatibility_check, horn_from_ore_sato, mellin_horn, principal_symbols,
    rationality_screens, symbol_resultant, verify_horn_solution, HornSystem, OreSatoCoefficient,
};
use crate::ser::value_to_rat;
use crate::supports::{admissible_supports, horn_fan, DEFAULT_WINDOW};
use crate::Rat;

type R<T> = std::result::Result<T, CliError>;

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn missing(field: &str) -> CliError {
    CliError::invalid(format!("missing required field '{}'", field))
}

/// The JSON text of a source and a label for messages.
fn source_text(src: &Source, field: &str) -> R<(String, String)> {
    match src {
        Source::Path(p) => Ok((read_input(p)?, format!("{} ({})", field, p.display()))),
        Source::Inline(v) => Ok((v.to_string(), field.to_string())),
    }
}

pub(crate) fn load_coefficient(src: &Source) -> R<OreSatoCoefficient> {
    let (text, label) = source_text(src, "ore_sato")?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let mut c: OreSatoCoefficient = serde_path_to_error::deserialize(de)
        .map_err(|e| CliError::invalid(format!("{} at '{}': {}", label, e.path(), e.inner())))?;
    if c.gamma.is_empty() {
        c.gamma = c.gamma_or_zero();
    }
    c.validate()
        .map_err(|e| CliError::invalid(format!("{}: {}", label, e)))?;
    Ok(c)
}

fn coefficient(job: &JobConfig) -> R<OreSatoCoefficient> {
    load_coefficient(job.ore_sato.as_ref().ok_or_else(|| missing("ore_sato"))?)
}

/// The system given directly, or derived from the coefficient.
fn system(job: &JobConfig) -> R<(HornSystem, Option<OreSatoCoefficient>)> {
    match (&job.system, &job.ore_sato) {
        (Some(_), Some(_)) => Err(CliError::invalid("give either 'system' or 'ore_sato', not both")),
        (Some(src), None) => {
            let (text, label) = source_text(src, "system")?;
            let h = HornSystem::from_json(&text).map_err(|e| CliError::invalid(format!("{}: {}", label, e)))?;
            Ok((h, None))
        }
        (None, Some(_)) => {
            let c = coefficient(job)?;
            Ok((horn_from_ore_sato(&c)?, Some(c)))
        }
        (None, None) => Err(missing("ore_sato")),
    }
}

/// Polynomial text, or the contents of a file when the argument names one.
/// Lines starting with `#` are comments.
pub(crate) fn poly_text(arg: &str) -> R<String> {
    let p = std::path::Path::new(arg);
    let raw = if p.is_file() { read_input(p)? } else { arg.to_string() };
    let body: Vec<&str> = raw
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if body.is_empty() {
        return Err(CliError::invalid("poly: empty polynomial"));
    }
    Ok(body.join(" "))
}

fn load_poly(job: &JobConfig) -> R<MultiPoly> {
    let text = poly_text(job.poly.as_deref().ok_or_else(|| missing("poly"))?)?;
    let f = parse_default(&text, 1).map_err(|e| CliError::invalid(format!("poly: {}", e)))?;
    if f.is_zero() {
        return Err(CliError::invalid("poly: the zero polynomial has no amoeba"));
    }
    Ok(f)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{}{}", prefix, i)).collect()
}

fn poly_string(p: &MultiPoly, prefix: &str) -> String {
    let ns = names(prefix, p.nvars());
    let refs: Vec<&str> = ns.iter().map(|s| s.as_str()).collect();
    p.to_string_with(&refs)
}

fn svg_files(stem: &str, a: &Artifact, out: &mut Outcome) -> R<()> {
    out.files.push((format!("{}-artifact.json", stem), pretty(a)));
    out.files.push((format!("{}.svg", stem), render_svg(a)?));
    Ok(())
}

/// Newton polytope as a drawable artifact, when it is one.
fn polytope_artifact(p: &LatticePolytope) -> Option<Artifact> {
    (p.nvars() <= 3).then(|| Artifact::Polytope {
        nvars: p.nvars(),
        vertices: p.vertices().to_vec(),
        points: Vec::new(),
    })
}

pub(crate) fn execute(job: &JobConfig) -> R<Outcome> {
    let mut out = Outcome::default();
    let stem = job.command.name();
    let value = match job.command {
        Command::Horn => horn(job)?,
        Command::Supports => supports(job, &mut out)?,
        Command::Fan => fan(job, &mut out)?,
        Command::Symbols => symbols(job)?,
        Command::Resultant => resultant(job, &mut out)?,
        Command::Discriminant => disc(job, &mut out)?,
        Command::Bergman => bergman(job)?,
        Command::Mellin => mellin(job)?,
        Command::Verify => verify(job)?,
        Command::Screens => serde_json::to_value(rationality_screens(&coefficient(job)?)?).expect("serializable"),
        Command::Amoeba => amoeba(job, &mut out)?,
        Command::Spine => spine_cmd(job, &mut out)?,
        Command::Render => return render(job),
    };
    out.stdout = pretty(&value);
    out.files.insert(0, (format!("{}.json", stem), out.stdout.clone()));
    Ok(out)
}

fn horn(job: &JobConfig) -> R<Value> {
    let (h, _) = system(job)?;
    Ok(json!({
        "nonconfluent": h.is_nonconfluent(),
        "compatible": compatibility_check(&h),
        "system": h.to_json_value(),
    }))
}

fn gamma(job: &JobConfig, c: Option<&OreSatoCoefficient>, n: usize) -> R<Vec<Rat>> {
    match &job.gamma {
        Some(g) => {
            if g.len() != n {
                return Err(CliError::invalid(format!("gamma: expected {} entries, got {}", n, g.len())));
            }
            g.iter()
                .enumerate()
                .map(|(i, v)| value_to_rat(v).map_err(|e| CliError::invalid(format!("gamma[{}]: {}", i, e))))
                .collect()
        }
        None => Ok(c.map(|c| c.gamma_or_zero()).unwrap_or_else(|| vec![Rat::from_integer(0.into()); n])),
    }
}

fn supports(job: &JobConfig, out: &mut Outcome) -> R<Value> {
    let (h, c) = system(job)?;
    let g = gamma(job, c.as_ref(), h.n)?;
    let window = job.window.unwrap_or(DEFAULT_WINDOW);
    if window < 1 {
        return Err(CliError::invalid(format!("window must be positive, got {}", window)));
    }
    let s = admissible_supports(&h, &g, window)?;
    if h.n <= 3 {
        let a = Artifact::SupportLattice {
            nvars: h.n,
            radius: if h.n == 3 { 4 } else { 6 },
            supports: s.clone(),
        };
        svg_files("supports", &a, out)?;
    }
    Ok(json!({
        "gamma": g.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "window": window,
        "count": s.len(),
        "supports": s,
    }))
}

fn fan(job: &JobConfig, out: &mut Outcome) -> R<Value> {
    let c = coefficient(job)?;
    let f = horn_fan(&c)?;
    if f.nvars <= 3 {
        let a = Artifact::Fan {
            nvars: f.nvars,
            cones: f.b_cones.iter().map(|k| k.generators().to_vec()).collect(),
        };
        svg_files("fan", &a, out)?;
    }
    Ok(json!({
        "count": f.b_cones.len(),
        "complete_fan": f.verdict.is_complete_fan(),
        "rays": f.rays(),
        "cones": f.b_cones.iter().map(|k| k.generators().to_vec()).collect::<Vec<_>>(),
        "witness_selections": f.witness_selections(),
        "fan": f,
    }))
}

fn symbols(job: &JobConfig) -> R<Value> {
    let (h, _) = system(job)?;
    let s = principal_symbols(&h)?;
    Ok(json!({
        "n": s.n,
        "variables": s.names(),
        "symbols": s.to_strings(),
        "z_degrees": (0..s.n).map(|i| s.z_degree(i)).collect::<Vec<_>>(),
    }))
}

fn resultant(job: &JobConfig, out: &mut Outcome) -> R<Value> {
    let (h, _) = system(job)?;
    let s = principal_symbols(&h)?;
    let r = symbol_resultant(&s)?;
    let e = essential_resultant(&r);
    let mut v = json!({
        "symbols": s.to_strings(),
        "resultant": poly_string(&r, "x"),
        "essential": poly_string(&e, "x"),
    });
    if !e.is_constant() {
        let np = newton_polytope(&e)?;
        v["newton_vertices"] = json!(np.vertices());
        if let Some(a) = polytope_artifact(&np) {
            svg_files("resultant", &a, out)?;
        }
    }
    Ok(v)
}

/// Natural order: alphabetic prefix, then numeric suffix.
fn natural_key(s: &str) -> (String, u64, String) {
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (p, d) = s.split_at(cut);
    (p.to_string(), d.parse().unwrap_or(0), s.to_string())
}

fn disc(job: &JobConfig, out: &mut Outcome) -> R<Value> {
    let eq = job.equation.as_deref().ok_or_else(|| missing("equation"))?;
    let var = job.var.as_deref().ok_or_else(|| missing("var"))?;
    let ids = identifiers(eq).map_err(|e| CliError::invalid(format!("equation: {}", e)))?;
    if !ids.iter().any(|v| v == var) {
        return Err(CliError::invalid(format!("var: '{}' does not occur in the equation", var)));
    }
    let mut others: Vec<String> = ids.into_iter().filter(|v| v != var).collect();
    others.sort_by_key(|s| natural_key(s));
    let mut all = others.clone();
    all.push(var.to_string());
    let f = parse_poly(eq, &all).map_err(|e| CliError::invalid(format!("equation: {}", e)))?;
    let k = others.len();
    let d = drop_var(&discriminant(&f, k).map_err(|e| CliError::invalid(format!("equation: {}", e)))?, k);
    let refs: Vec<&str> = others.iter().map(|s| s.as_str()).collect();
    let text = d.to_string_with(&refs);
    let mut v = json!({
        "variables": others,
        "var": var,
        "discriminant": text,
        "terms": d.num_terms(),
        "total_degree": d.total_degree(),
    });
    if k >= 1 && !d.is_constant() && !d.has_negative_exponents() {
        let np = newton_polytope(&d)?;
        v["newton_vertices"] = json!(np.vertices());
        if let Some(a) = polytope_artifact(&np) {
            svg_files("discriminant", &a, out)?;
        }
    }
    out.files.push(("discriminant.txt".into(), format!("{}\n", text)));
    Ok(v)
}

fn bergman(job: &JobConfig) -> R<Value> {
    let p = job.p.as_ref().ok_or_else(|| missing("p"))?;
    let b = bergman_kernel(p)?;
    let closed = match &b.closed_form {
        Ok(r) => json!({
            "numerator": poly_string(r.num(), "x"),
            "denominator": poly_string(r.den(), "x"),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(json!({
        "p": b.p,
        "coefficient": b.coefficient,
        "system": b.system.to_json_value(),
        "closed_form": closed,
        "note": NORMALIZATION_NOTE,
    }))
}

fn mellin(job: &JobConfig) -> R<Value> {
    let m = job.m.ok_or_else(|| missing("m"))?;
    let exps = job.exps.as_ref().ok_or_else(|| missing("exps"))?;
    let h = mellin_horn(m, exps)?;
    Ok(json!({
        "m": m,
        "exps": exps,
        "compatible": compatibility_check(&h),
        "system": h.to_json_value(),
    }))
}

fn verify(job: &JobConfig) -> R<Value> {
    let (h, _) = system(job)?;
    let sol = job.solution.as_ref().ok_or_else(|| missing("solution"))?;
    let ns = names("x", h.n);
    let parse = |s: &str, field: &str| {
        parse_poly(s, &ns).map_err(|e| CliError::invalid(format!("solution.{}: {}", field, e)))
    };
    let num = parse(&sol.num, "num")?;
    let den = match &sol.den {
        Some(d) => parse(d, "den")?,
        None => MultiPoly::one(h.n),
    };
    let y = RationalFn::new(num, den).map_err(|e| CliError::invalid(format!("solution: {}", e)))?;
    let res = verify_horn_solution(&h, &y)?;
    Ok(json!({
        "solution": y.to_string(),
        "residuals": res.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "is_solution": res.iter().all(|r| r.is_zero()),
    }))
}

fn axis_bounds(v: &Option<Vec<f64>>, n: usize, field: &str, default: f64) -> R<Vec<f64>> {
    match v {
        None => Ok(vec![default; n]),
        Some(b) if b.len() == 1 => Ok(vec![b[0]; n]),
        Some(b) if b.len() == n => Ok(b.clone()),
        Some(b) => Err(CliError::invalid(format!("{}: expected 1 or {} values, got {}", field, n, b.len()))),
    }
}

pub(crate) fn grid_params(job: &JobConfig, f: &MultiPoly) -> R<GridParams> {
    let n = f.nvars();
    let g = &job.grid;
    let r = default_radius(f);
    let lo = axis_bounds(&g.lo, n, "grid.lo", -r)?;
    let hi = axis_bounds(&g.hi, n, "grid.hi", r)?;
    for i in 0..n {
        if !(lo[i].is_finite() && hi[i].is_finite() && lo[i] < hi[i]) {
            return Err(CliError::invalid(format!("grid.lo/grid.hi: empty or invalid range on axis {}", i + 1)));
        }
    }
    let mut p = GridParams::default();
    p.lo = Some(lo);
    p.hi = Some(hi);
    p.seed = job.seed;
    if let Some(res) = g.resolution {
        if res == 0 {
            return Err(CliError::invalid("grid.resolution must be positive"));
        }
        p.resolution = Some(res);
    }
    if let Some(u) = g.max_unknown {
        if !(0.0..=1.0).contains(&u) {
            return Err(CliError::invalid("grid.max_unknown must lie in [0, 1]"));
        }
        p.max_unknown = u;
    }
    let t = &job.tolerance;
    let m = &mut p.membership;
    for (field, val, slot) in [
        ("tolerance.n_angle", t.n_angle, &mut m.n_angle),
        ("tolerance.n_circle", t.n_circle, &mut m.n_circle),
        ("tolerance.n_fiber", t.n_fiber, &mut m.n_fiber),
        ("tolerance.refine_samples", t.refine_samples, &mut m.refine_samples),
    ] {
        if let Some(v) = val {
            if v == 0 {
                return Err(CliError::invalid(format!("{} must be positive", field)));
            }
            *slot = v;
        }
    }
    if let Some(tol) = t.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::invalid("tolerance.tol must be positive"));
        }
        m.tol = tol;
    }
    Ok(p)
}

fn amoeba(job: &JobConfig, out: &mut Outcome) -> R<Value> {
    let f = load_poly(job)?;
    let params = grid_params(job, &f)?;
    let (grid, census) = component_census(&f, &params)?;
    out.inconclusive = census.verdict == Verdict::Inconclusive;
    out.files.push(("grid.csv".into(), grid.to_csv()));
    if f.nvars() <= 3 {
        svg_files("amoeba", &Artifact::AmoebaGrid { grid: grid.clone() }, out)?;
    }
    Ok(json!({
        "polynomial": poly_string(&f, "x"),
        "nvars": grid.nvars,
        "lo": grid.lo,
        "hi": grid.hi,
        "resolution": grid.resolution,
        "seed": params.seed,
        "census": census,
    }))
}

fn spine_cmd(job: &JobConfig, out: &mut Outcome) -> R<Value> {
    let f = load_poly(job)?;
    let mut v = json!({ "polynomial": poly_string(&f, "x") });
    let (pieces, warnings) = if job.census {
        let params = grid_params(job, &f)?;
        let (_, census) = component_census(&f, &params)?;
        out.inconclusive = census.verdict == Verdict::Inconclusive;
        let r = ronkin_pieces(&f, &census)?;
        v["census"] = serde_json::to_value(&census).expect("serializable");
        r
    } else {
        (vertex_pieces(&f)?, Vec::new())
    };
    let s = spine(&pieces)?;
    if s.nvars <= 3 {
        svg_files("spine", &Artifact::Spine2d { spine: s.clone() }, out)?;
    }
    v["warnings"] = json!(warnings);
    v["dual_volume"] = json!(s.dual_volume().to_string());
    v["spine"] = serde_json::to_value(&s).expect("serializable");
    Ok(v)
}

fn render(job: &JobConfig) -> R<Outcome> {
    let src = job.artifact.as_ref().ok_or_else(|| missing("artifact"))?;
    let (text, label) = source_text(src, "artifact")?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let a: Artifact = serde_path_to_error::deserialize(de)
        .map_err(|e| CliError::invalid(format!("{} at '{}': {}", label, e.path(), e.inner())))?;
    let svg = render_svg(&a)?;
    let stdout = match &job.output {
        Some(p) => pretty(&json!({ "type": a.kind(), "output": p })),
        None => svg.clone(),
    };
    Ok(Outcome {
        stdout,
        files: vec![("render.svg".into(), svg)],
        inconclusive: false,
    })
}
