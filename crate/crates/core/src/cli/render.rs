//! Deterministic SVG for 1-, 2- and 3-dimensional artifacts.
//!
//! Fixed 800x640 viewbox: the plot occupies the left 640 units, a legend
//! the rest. Three-dimensional data is drawn in a fixed orthographic view
//! with an axis legend. Colors of amoeba components are a hash of the order
//! vector, so the same order always gets the same color.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::amoeba::{AmoebaGrid, CellState, SpineComplex};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::supports::SupportSpec;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 640.0;
const PLOT: (f64, f64, f64, f64) = (60.0, 60.0, 580.0, 580.0);
const INSIDE: &str = "#1a1a1a";
const UNKNOWN: &str = "#d9d9d9";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Artifact {
    SupportLattice {
        nvars: usize,
        radius: i64,
        supports: Vec<SupportSpec>,
    },
    /// Each cone as its generator list.
    Fan {
        nvars: usize,
        cones: Vec<Vec<Vec<i64>>>,
    },
    Polytope {
        nvars: usize,
        vertices: Vec<Vec<i64>>,
        #[serde(default)]
        points: Vec<Vec<i64>>,
    },
    AmoebaGrid {
        grid: AmoebaGrid,
    },
    #[serde(rename = "spine-2d")]
    Spine2d {
        spine: SpineComplex,
    },
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::SupportLattice { .. } => "support-lattice",
            Artifact::Fan { .. } => "fan",
            Artifact::Polytope { .. } => "polytope",
            Artifact::AmoebaGrid { .. } => "amoeba-grid",
            Artifact::Spine2d { .. } => "spine-2d",
        }
    }

    fn nvars(&self) -> usize {
        match self {
            Artifact::SupportLattice { nvars, .. } | Artifact::Fan { nvars, .. } | Artifact::Polytope { nvars, .. } => {
                *nvars
            }
            Artifact::AmoebaGrid { grid } => grid.nvars,
            Artifact::Spine2d { spine } => spine.nvars,
        }
    }
}

pub fn render_svg(a: &Artifact) -> Result<String> {
    let n = a.nvars();
    if !(1..=3).contains(&n) {
        return Err(Error::Unsupported(format!("cannot draw a {}-dimensional {}", n, a.kind())));
    }
    match a {
        Artifact::SupportLattice { radius, supports, .. } => support_lattice(n, *radius, supports),
        Artifact::Fan { cones, .. } => fan(n, cones),
        Artifact::Polytope { vertices, points, .. } => polytope(n, vertices, points),
        Artifact::AmoebaGrid { grid } => amoeba_grid(grid),
        Artifact::Spine2d { spine } => spine_drawing(spine),
    }
}

// ---------- drawing primitives ----------

fn num(x: f64) -> String {
    let s = format!("{:.2}", x);
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Svg {
    body: String,
    legend_y: f64,
}

impl Svg {
    fn new(title: &str) -> Self {
        let mut s = Svg {
            body: String::new(),
            legend_y: 80.0,
        };
        let _ = writeln!(
            s.body,
            r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
            WIDTH, HEIGHT
        );
        s.text(WIDTH / 2.0, 30.0, title, 16.0, "middle");
        s
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64, dash: bool) {
        let d = if dash { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"{}/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1),
            stroke,
            num(width),
            d
        );
    }

    fn circle(&mut self, c: (f64, f64), r: f64, fill: &str, stroke: Option<&str>) {
        let st = stroke.map(|s| format!(r#" stroke="{}" stroke-width="1""#, s)).unwrap_or_default();
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"{}/>"#,
            num(c.0),
            num(c.1),
            num(r),
            fill,
            st
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
            num(x),
            num(y),
            num(w),
            num(h),
            fill
        );
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, opacity: f64, stroke: &str) {
        let p: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{}" fill-opacity="{}" stroke="{}" stroke-width="1"/>"#,
            p.join(" "),
            fill,
            num(opacity),
            stroke
        );
    }

    fn text(&mut self, x: f64, y: f64, t: &str, size: f64, anchor: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="{}" text-anchor="{}">{}</text>"#,
            num(x),
            num(y),
            num(size),
            anchor,
            escape(t)
        );
    }

    /// Swatch and label; long labels wrap after commas or spaces.
    fn legend(&mut self, color: &str, label: &str) {
        const COLS: usize = 25;
        let mut lines: Vec<String> = vec![String::new()];
        for word in label.split_inclusive([' ', ',']) {
            let cur = lines.last_mut().unwrap();
            if !cur.is_empty() && cur.len() + word.len() > COLS {
                lines.push(String::new());
            }
            lines.last_mut().unwrap().push_str(word);
        }
        if self.legend_y + 14.0 * (lines.len() - 1) as f64 > HEIGHT - 10.0 {
            return;
        }
        let y = self.legend_y;
        self.rect(600.0, y - 10.0, 12.0, 12.0, color);
        for (k, l) in lines.iter().enumerate() {
            let indent = if k == 0 { 618.0 } else { 630.0 };
            self.text(indent, y + 14.0 * k as f64, l.trim_end(), 11.0, "start");
        }
        self.legend_y += 14.0 * lines.len() as f64 + 4.0;
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\" shape-rendering=\"crispEdges\">\n{}</svg>\n",
            WIDTH, HEIGHT, WIDTH, HEIGHT, self.body
        )
    }
}

/// Color keyed by an integer vector (FNV-1a hash into HSL).
pub fn order_color(order: &[i64]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for v in order {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    let hue = (h % 360) as f64;
    let sat = (55 + (h >> 16) % 30) as f64 / 100.0;
    let light = (42 + (h >> 32) % 18) as f64 / 100.0;
    hsl_hex(hue, sat, light)
}

fn index_color(k: usize, m: usize) -> String {
    hsl_hex(((k * 360 / m.max(1)) % 360) as f64, 0.65, 0.5)
}

fn hsl_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", to(r), to(g), to(b))
}

/// World-to-canvas map: orthographic view for 3-D, identity otherwise.
struct View {
    n: usize,
    lo: (f64, f64),
    scale: f64,
    off: (f64, f64),
}

const AZIMUTH: f64 = 0.6;
const ELEVATION: f64 = 0.4;

fn project(n: usize, p: &[f64]) -> (f64, f64, f64) {
    match n {
        1 => (p[0], 0.0, 0.0),
        2 => (p[0], p[1], 0.0),
        _ => {
            let (sa, ca) = AZIMUTH.sin_cos();
            let (se, ce) = ELEVATION.sin_cos();
            let u = -sa * p[0] + ca * p[1];
            let v = -se * ca * p[0] - se * sa * p[1] + ce * p[2];
            let depth = ce * ca * p[0] + ce * sa * p[1] + se * p[2];
            (u, v, depth)
        }
    }
}

impl View {
    /// Fits the projected points into the plot area with a uniform scale.
    fn fit(n: usize, pts: &[Vec<f64>]) -> View {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            let (u, v, _) = project(n, p);
            lo = (lo.0.min(u), lo.1.min(v));
            hi = (hi.0.max(u), hi.1.max(v));
        }
        if !lo.0.is_finite() {
            lo = (-1.0, -1.0);
            hi = (1.0, 1.0);
        }
        let w = (hi.0 - lo.0).max(1e-9);
        let h = (hi.1 - lo.1).max(1e-9);
        let (pw, ph) = (PLOT.2 - PLOT.0, PLOT.3 - PLOT.1);
        let scale = (pw / w).min(ph / h);
        let off = (PLOT.0 + (pw - w * scale) / 2.0, PLOT.1 + (ph - h * scale) / 2.0);
        View { n, lo, scale, off }
    }

    fn at(&self, p: &[f64]) -> (f64, f64) {
        let (u, v, _) = project(self.n, p);
        (
            self.off.0 + (u - self.lo.0) * self.scale,
            PLOT.3 - (self.off.1 - PLOT.1) - (v - self.lo.1) * self.scale,
        )
    }

    fn depth(&self, p: &[f64]) -> f64 {
        project(self.n, p).2
    }

    /// Coordinate axes through the origin (2-D) or an axis legend (3-D).
    fn axes(&self, svg: &mut Svg, name: &str, lo: &[f64], hi: &[f64]) {
        if self.n == 3 {
            let o = (90.0, HEIGHT - 40.0);
            for i in 0..3 {
                let mut e = [0.0; 3];
                e[i] = 1.0;
                let (u, v, _) = project(3, &e);
                let tip = (o.0 + 35.0 * u, o.1 - 35.0 * v);
                svg.line(o, tip, "#555", 1.5, false);
                svg.text(tip.0 + 4.0 * u.signum(), tip.1 - 4.0 * v.signum(), &format!("{}{}", name, i + 1), 11.0, "middle");
            }
            return;
        }
        let seg = |a: Vec<f64>, b: Vec<f64>, svg: &mut Svg| {
            svg.line(self.at(&a), self.at(&b), "#999", 1.0, false);
        };
        if self.n == 1 {
            seg(vec![lo[0]], vec![hi[0]], svg);
            svg.text(PLOT.2, self.at(&[hi[0]]).1 + 16.0, &format!("{}1", name), 12.0, "end");
            return;
        }
        if lo[1] <= 0.0 && hi[1] >= 0.0 {
            seg(vec![lo[0], 0.0], vec![hi[0], 0.0], svg);
        }
        if lo[0] <= 0.0 && hi[0] >= 0.0 {
            seg(vec![0.0, lo[1]], vec![0.0, hi[1]], svg);
        }
        let bl = self.at(&[lo[0], lo[1]]);
        let tr = self.at(&[hi[0], hi[1]]);
        svg.text(tr.0, bl.1 + 18.0, &format!("{}1", name), 12.0, "end");
        svg.text(bl.0 - 8.0, tr.1 + 4.0, &format!("{}2", name), 12.0, "end");
        svg.text(bl.0, bl.1 + 18.0, &num(lo[0]), 10.0, "start");
        svg.text(bl.0 - 8.0, bl.1, &num(lo[1]), 10.0, "end");
        svg.text(tr.0 - 30.0, bl.1 + 32.0, &num(hi[0]), 10.0, "start");
        svg.text(bl.0 - 8.0, tr.1 + 16.0, &num(hi[1]), 10.0, "end");
    }
}

fn box_corners(lo: &[f64], hi: &[f64]) -> Vec<Vec<f64>> {
    let n = lo.len();
    (0..1usize << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { hi[i] } else { lo[i] }).collect())
        .collect()
}

fn box_edges(svg: &mut Svg, view: &View, lo: &[f64], hi: &[f64]) {
    let c = box_corners(lo, hi);
    for a in 0..c.len() {
        for i in 0..lo.len() {
            let b = a | 1 << i;
            if b != a {
                svg.line(view.at(&c[a]), view.at(&c[b]), "#bbb", 1.0, false);
            }
        }
    }
}

fn to_f(v: &[i64]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

fn unit(v: &[f64]) -> Vec<f64> {
    let l = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    v.iter().map(|x| x / l).collect()
}

fn fmt_vec(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Points of a planar convex set in cyclic order around their centroid,
/// measured in a basis of the plane orthogonal to `normal` (3-D) or the
/// coordinate plane (2-D).
fn cyclic(pts: &[Vec<f64>], normal: Option<&[f64]>) -> Vec<usize> {
    let n = pts[0].len();
    let m = pts.len() as f64;
    let c: Vec<f64> = (0..n).map(|i| pts.iter().map(|p| p[i]).sum::<f64>() / m).collect();
    let (e1, e2) = match normal {
        None => (vec![1.0, 0.0], vec![0.0, 1.0]),
        Some(nv) => {
            let nv = unit(nv);
            let seed = if nv[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let e1 = unit(&cross(&nv, &seed));
            let e2 = cross(&nv, &e1);
            (e1, e2)
        }
    };
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let ang = |p: &Vec<f64>| {
        let d: Vec<f64> = p.iter().zip(&c).map(|(a, b)| a - b).collect();
        let x: f64 = d.iter().zip(&e1).map(|(a, b)| a * b).sum();
        let y: f64 = d.iter().zip(&e2).map(|(a, b)| a * b).sum();
        y.atan2(x)
    };
    idx.sort_by(|&a, &b| ang(&pts[a]).total_cmp(&ang(&pts[b])));
    idx
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

// ---------- artifacts ----------

fn support_lattice(n: usize, r: i64, supports: &[SupportSpec]) -> Result<String> {
    if r < 0 || r > 40 {
        return Err(Error::Invalid(format!("radius must be in 0..=40, got {}", r)));
    }
    if let Some(s) = supports.iter().find(|s| s.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s.nvars(),
        });
    }
    let lo = vec![-r as f64 - 0.5; n];
    let hi = vec![r as f64 + 0.5; n];
    let view = View::fit(n, &box_corners(&lo, &hi));
    let mut svg = Svg::new(&format!("support lattice: {} supports, |s_i| <= {}", supports.len(), r));
    view.axes(&mut svg, "s", &lo, &hi);
    if n == 3 {
        box_edges(&mut svg, &view, &lo, &hi);
    }
    let mut pts: Vec<(Vec<i64>, Vec<usize>)> = crate::supports::spec::box_points(n, r)
        .into_iter()
        .map(|s| {
            let hits = (0..supports.len()).filter(|&k| supports[k].contains(&s)).collect();
            (s, hits)
        })
        .collect();
    if n == 3 {
        pts.retain(|(_, h): &(Vec<i64>, Vec<usize>)| !h.is_empty());
        pts.sort_by(|a, b| view.depth(&to_f(&a.0)).total_cmp(&view.depth(&to_f(&b.0))).then(a.0.cmp(&b.0)));
    }
    let cell = view.scale;
    for (s, hits) in &pts {
        let c = view.at(&to_f(s));
        match hits.first() {
            None => svg.circle(c, (0.1 * cell).min(2.0), "#bbb", None),
            Some(&k) => svg.circle(
                c,
                (0.3 * cell).min(8.0),
                &index_color(k, supports.len()),
                (hits.len() > 1).then_some("black"),
            ),
        }
    }
    for (k, s) in supports.iter().enumerate() {
        let label = format!("S{} witness {}", k + 1, fmt_vec(&s.witness));
        svg.legend(&index_color(k, supports.len()), &label);
    }
    Ok(svg.finish())
}

fn fan(n: usize, cones: &[Vec<Vec<i64>>]) -> Result<String> {
    if let Some(g) = cones.iter().flatten().find(|g| g.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: g.len() });
    }
    let lo = vec![-1.2; n];
    let hi = vec![1.2; n];
    let view = View::fit(n, &box_corners(&lo, &hi));
    let mut svg = Svg::new(&format!("fan: {} maximal cones", cones.len()));
    view.axes(&mut svg, "w", &lo, &hi);
    let origin = vec![0.0; n];
    let o = view.at(&origin);
    let mut order: Vec<usize> = (0..cones.len()).collect();
    let centroid = |k: usize| -> Vec<f64> {
        let gs: Vec<Vec<f64>> = cones[k].iter().map(|g| unit(&to_f(g))).collect();
        (0..n).map(|i| gs.iter().map(|g| g[i]).sum::<f64>()).collect()
    };
    if n == 3 {
        order.sort_by(|&a, &b| view.depth(&centroid(a)).total_cmp(&view.depth(&centroid(b))));
    }
    for &k in &order {
        let color = index_color(k, cones.len());
        let gs: Vec<Vec<f64>> = cones[k].iter().map(|g| unit(&to_f(g))).collect();
        if gs.is_empty() {
            continue;
        }
        let poly: Vec<(f64, f64)> = match n {
            2 if gs.len() == 2 => {
                let a0 = gs[0][1].atan2(gs[0][0]);
                let mut a1 = gs[1][1].atan2(gs[1][0]);
                if a1 < a0 {
                    a1 += std::f64::consts::TAU;
                }
                let (a0, a1) = if a1 - a0 > std::f64::consts::PI {
                    (a1, a0 + std::f64::consts::TAU)
                } else {
                    (a0, a1)
                };
                let mut p = vec![o];
                for j in 0..=16 {
                    let a = a0 + (a1 - a0) * j as f64 / 16.0;
                    p.push(view.at(&[a.cos(), a.sin()]));
                }
                p
            }
            3 if gs.len() >= 3 => {
                let c = centroid(k);
                cyclic(&gs, Some(&c)).into_iter().map(|i| view.at(&gs[i])).collect()
            }
            _ => Vec::new(),
        };
        if !poly.is_empty() {
            svg.polygon(&poly, &color, 0.35, "none");
        }
        for (g, gi) in gs.iter().zip(&cones[k]) {
            let tip = view.at(g);
            svg.line(o, tip, "#222", 1.5, false);
            svg.text(tip.0, tip.1 - 4.0, &fmt_vec(gi), 10.0, "middle");
        }
    }
    for (k, c) in cones.iter().enumerate() {
        let gens: Vec<String> = c.iter().map(|g| fmt_vec(g)).collect();
        svg.legend(&index_color(k, cones.len()), &format!("B{} {}", k + 1, gens.join(" ")));
    }
    Ok(svg.finish())
}

/// Two-dimensional convex hull (monotone chain), counter-clockwise.
fn hull2(mut p: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let turn = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut h: Vec<(f64, f64)> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let it: Box<dyn Iterator<Item = &(f64, f64)>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in it {
            while h.len() >= start + 2 && turn(h[h.len() - 2], h[h.len() - 1], q) <= 0.0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    h
}

fn polytope(n: usize, vertices: &[Vec<i64>], points: &[Vec<i64>]) -> Result<String> {
    if vertices.is_empty() {
        return Err(Error::Invalid("polytope without vertices".into()));
    }
    let poly = LatticePolytope::from_points(n, vertices)?;
    let vs: Vec<Vec<f64>> = poly.vertices().iter().map(|v| to_f(v)).collect();
    let lo: Vec<f64> = (0..n).map(|i| vs.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min) - 1.0).collect();
    let hi: Vec<f64> = (0..n).map(|i| vs.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max) + 1.0).collect();
    let view = View::fit(n, &box_corners(&lo, &hi));
    let mut svg = Svg::new(&format!("polytope: {} vertices, dimension {}", vs.len(), poly.dim()));
    view.axes(&mut svg, "e", &lo, &hi);
    let fill = "#7aa6d6";
    if n == 3 && poly.dim() == 3 {
        let mut faces: Vec<(f64, Vec<(f64, f64)>)> = poly
            .facets()
            .iter()
            .map(|f| {
                let on: Vec<Vec<f64>> = poly
                    .vertices()
                    .iter()
                    .filter(|v| v.iter().zip(&f.normal).map(|(a, b)| a * b).sum::<i64>() == f.offset)
                    .map(|v| to_f(v))
                    .collect();
                let nf = to_f(&f.normal);
                let idx = cyclic(&on, Some(&nf));
                let c: Vec<f64> = (0..3).map(|i| on.iter().map(|p| p[i]).sum::<f64>() / on.len() as f64).collect();
                (view.depth(&c), idx.into_iter().map(|i| view.at(&on[i])).collect())
            })
            .collect();
        faces.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (_, pts) in &faces {
            svg.polygon(pts, fill, 0.3, "#234");
        }
    } else {
        let proj: Vec<(f64, f64)> = vs.iter().map(|v| view.at(v)).collect();
        let h = hull2(proj);
        if h.len() >= 3 {
            svg.polygon(&h, fill, 0.4, "#234");
        } else if h.len() == 2 {
            svg.line(h[0], h[1], "#234", 2.0, false);
        }
    }
    for p in points {
        if p.len() == n {
            svg.circle(view.at(&to_f(p)), 2.5, "#555", None);
        }
    }
    for (v, vi) in vs.iter().zip(poly.vertices()) {
        let c = view.at(v);
        svg.circle(c, 4.0, "#c0392b", None);
        svg.text(c.0 + 6.0, c.1 - 6.0, &fmt_vec(vi), 11.0, "start");
    }
    Ok(svg.finish())
}

fn cell_color(c: &CellState) -> Option<String> {
    match c {
        CellState::Inside => Some(INSIDE.into()),
        CellState::Unknown => Some(UNKNOWN.into()),
        CellState::Outside { order } => Some(order_color(order)),
    }
}

fn amoeba_grid(g: &AmoebaGrid) -> Result<String> {
    let n = g.nvars;
    let expected = g.resolution.checked_pow(n as u32).unwrap_or(usize::MAX);
    if g.cells.len() != expected {
        return Err(Error::Invalid(format!(
            "grid has {} cells, expected resolution^nvars = {}",
            g.cells.len(),
            expected
        )));
    }
    let (lo, hi) = if g.lo.len() == n && g.hi.len() == n {
        (g.lo.clone(), g.hi.clone())
    } else {
        (vec![-1.0; n], vec![1.0; n])
    };
    let view = View::fit(n, &box_corners(&lo, &hi));
    let mut svg = Svg::new(&format!("amoeba grid: {} cells per axis", g.resolution));
    view.axes(&mut svg, "t", &lo, &hi);
    let res = g.resolution;
    if n == 3 {
        box_edges(&mut svg, &view, &lo, &hi);
        let mut inside: Vec<(f64, (f64, f64))> = (0..g.cells.len())
            .filter(|&k| g.cells[k] == CellState::Inside)
            .map(|k| {
                let c = g.center(k);
                (view.depth(&c), view.at(&c))
            })
            .collect();
        inside.sort_by(|a, b| a.0.total_cmp(&b.0));
        let side = (view.scale * (hi[0] - lo[0]) / res.max(1) as f64).max(0.8);
        let (dmin, dmax) = (
            inside.first().map_or(0.0, |x| x.0),
            inside.last().map_or(1.0, |x| x.0),
        );
        for (d, p) in &inside {
            // Far cells lighter, near cells dark.
            let f = if dmax > dmin { (dmax - d) / (dmax - dmin) } else { 0.0 };
            let g = (26.0 + 150.0 * f).round() as u8;
            let shade = format!("#{:02x}{:02x}{:02x}", g, g, g);
            svg.rect(p.0 - side / 2.0, p.1 - side / 2.0, side, side, &shade);
        }
    } else if res > 0 {
        let rows = if n == 1 { 1 } else { res };
        let dx = (hi[0] - lo[0]) / res as f64;
        let dy = if n == 2 { (hi[1] - lo[1]) / res as f64 } else { 0.0 };
        for j in 0..rows {
            let mut i = 0;
            while i < res {
                let c = &g.cells[i + j * res];
                let mut k = i + 1;
                while k < res && &g.cells[k + j * res] == c {
                    k += 1;
                }
                if let Some(color) = cell_color(c) {
                    let (a, b) = if n == 1 {
                        (view.at(&[lo[0] + i as f64 * dx]), view.at(&[lo[0] + k as f64 * dx]))
                    } else {
                        let y0 = lo[1] + j as f64 * dy;
                        (
                            view.at(&[lo[0] + i as f64 * dx, y0 + dy]),
                            view.at(&[lo[0] + k as f64 * dx, y0]),
                        )
                    };
                    let h = if n == 1 { 30.0 } else { b.1 - a.1 };
                    let y = if n == 1 { a.1 - 15.0 } else { a.1 };
                    // Slight overlap hides seams between neighbouring rows.
                    svg.rect(a.0, y, b.0 - a.0 + 0.3, h + 0.3, &color);
                }
                i = k;
            }
        }
    }
    let mut orders: Vec<&Vec<i64>> = g
        .cells
        .iter()
        .filter_map(|c| match c {
            CellState::Outside { order } => Some(order),
            _ => None,
        })
        .collect();
    orders.sort();
    orders.dedup();
    if g.cells.contains(&CellState::Inside) {
        svg.legend(INSIDE, "inside");
    }
    if g.cells.contains(&CellState::Unknown) {
        svg.legend(UNKNOWN, "unknown");
    }
    for o in orders {
        svg.legend(&order_color(o), &format!("order {}", fmt_vec(o)));
    }
    Ok(svg.finish())
}

fn spine_drawing(s: &SpineComplex) -> Result<String> {
    let n = s.nvars;
    let vertices: Vec<&crate::amoeba::SpineCell> = s.cells.iter().filter(|c| c.dim == 0).collect();
    let anchor: Vec<Vec<f64>> = if vertices.is_empty() {
        s.cells.iter().map(|c| c.point.clone()).collect()
    } else {
        vertices.iter().map(|c| c.point.clone()).collect()
    };
    let mut lo = vec![-1.0; n];
    let mut hi = vec![1.0; n];
    if !anchor.is_empty() {
        for i in 0..n {
            lo[i] = anchor.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
            hi[i] = anchor.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
        }
    }
    let extent = (0..n).map(|i| hi[i] - lo[i]).fold(0.0, f64::max);
    let pad = (0.3 * extent).max(2.0);
    for i in 0..n {
        lo[i] -= pad;
        hi[i] += pad;
    }
    let view = View::fit(n, &box_corners(&lo, &hi));
    let mut svg = Svg::new(&format!(
        "spine: {} regions, {} cells{}",
        s.regions.len(),
        s.cells.len(),
        if s.certified { ", exact" } else { "" }
    ));
    view.axes(&mut svg, "t", &lo, &hi);
    if n == 3 {
        box_edges(&mut svg, &view, &lo, &hi);
    }
    let reach = 2.0 * (extent + pad);
    let clip = |p: Vec<f64>| -> Vec<f64> { p.iter().enumerate().map(|(i, x)| x.clamp(lo[i], hi[i])).collect() };
    let towards = |from: &[f64], dir: &[i64]| -> Vec<f64> {
        let d = unit(&to_f(dir));
        // Walk along the ray until the first box face.
        let mut t = reach;
        for i in 0..n {
            if d[i] > 1e-12 {
                t = t.min((hi[i] - from[i]) / d[i]);
            } else if d[i] < -1e-12 {
                t = t.min((lo[i] - from[i]) / d[i]);
            }
        }
        clip(from.iter().zip(&d).map(|(a, b)| a + t.max(0.0) * b).collect())
    };
    for c in s.cells.iter().filter(|c| c.dim == 1) {
        let ends: Vec<&Vec<f64>> = vertices
            .iter()
            .filter(|v| c.members.iter().all(|m| v.members.contains(m)))
            .map(|v| &v.point)
            .collect();
        let stroke = if n == 2 { "#c0392b" } else { "#2c3e50" };
        match (ends.len(), c.rays.len()) {
            (2, _) => svg.line(view.at(ends[0]), view.at(ends[1]), stroke, 2.0, false),
            (1, _) => {
                for r in &c.rays {
                    svg.line(view.at(ends[0]), view.at(&towards(ends[0], r)), stroke, 2.0, false);
                }
            }
            _ => {
                if let Some(r) = c.rays.first() {
                    let back: Vec<i64> = r.iter().map(|x| -x).collect();
                    svg.line(view.at(&towards(&c.point, &back)), view.at(&towards(&c.point, r)), stroke, 2.0, false);
                }
            }
        }
    }
    for v in &vertices {
        let p = view.at(&v.point);
        svg.circle(p, 4.0, "#2c3e50", None);
    }
    for (k, v) in vertices.iter().enumerate() {
        let label = match &v.exact_point {
            Some(e) => format!("V{} ({})", k + 1, e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
            None => format!(
                "V{} ({})",
                k + 1,
                v.point.iter().map(|x| format!("{:.3}", x)).collect::<Vec<_>>().join(", ")
            ),
        };
        let p = view.at(&v.point);
        svg.text(p.0 + 6.0, p.1 - 6.0, &format!("V{}", k + 1), 10.0, "start");
        svg.legend("#2c3e50", &label);
    }
    Ok(svg.finish())
}
