//! Stereographic SVG rendering. Floating point is used only here.

use super::{Curve, PictureDatum, Region};
use crate::group::PositiveWord;
use crate::rational::{dot, to_f64, Q};
use num_traits::Signed;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StyleError {
    #[error(
        "bad style entry `{0}`; expected width=<px>, flatness=<fraction> or show-ghosts=<bool>"
    )]
    Entry(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Style {
    pub width: f64,
    /// Maximal chord deviation as a fraction of the drawing extent.
    pub flatness: f64,
    pub show_ghosts: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            width: 600.0,
            flatness: 0.005,
            show_ghosts: false,
        }
    }
}

impl Style {
    /// Parses `key=value` pairs separated by commas or whitespace.
    pub fn parse(spec: &str) -> Result<Self, StyleError> {
        let mut style = Style::default();
        for entry in spec.split([',', ' ']).filter(|e| !e.is_empty()) {
            let bad = || StyleError::Entry(entry.to_string());
            let (k, v) = entry.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "width" => {
                    style.width = v
                        .trim()
                        .parse()
                        .ok()
                        .filter(|w: &f64| *w > 0.0)
                        .ok_or_else(bad)?
                }
                "flatness" => {
                    style.flatness = v
                        .trim()
                        .parse()
                        .ok()
                        .filter(|f: &f64| *f > 0.0 && *f < 1.0)
                        .ok_or_else(bad)?
                }
                "show-ghosts" => style.show_ghosts = v.trim().parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        Ok(style)
    }
}

type P3 = [f64; 3];
type P2 = (f64, f64);

fn unit(v: &[Q]) -> P3 {
    let p = [to_f64(&v[0]), to_f64(&v[1]), to_f64(&v[2])];
    normalize(p)
}

fn normalize(p: P3) -> P3 {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / n, p[1] / n, p[2] / n]
}

fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Projection from the unit point `pole` onto the plane orthogonal to it.
struct Projector {
    pole: P3,
    e1: P3,
    e2: P3,
}

impl Projector {
    fn new(pole: P3) -> Self {
        let k = (0..3)
            .min_by(|&a, &b| pole[a].abs().total_cmp(&pole[b].abs()))
            .expect("three axes");
        let mut axis = [0.0; 3];
        axis[k] = 1.0;
        let e1 = normalize(cross3(pole, axis));
        let e2 = cross3(pole, e1);
        Projector { pole, e1, e2 }
    }

    fn project(&self, u: P3) -> P2 {
        let s = dot3(u, self.pole);
        let d = 1.0 - s;
        let v = [
            (u[0] - s * self.pole[0]) / d,
            (u[1] - s * self.pole[1]) / d,
            (u[2] - s * self.pole[2]) / d,
        ];
        (dot3(v, self.e1), -dot3(v, self.e2))
    }
}

fn great_arc_points(pr: &Projector, a: P3, b: P3, tol: f64, depth: u32, out: &mut Vec<P2>) {
    let (pa, pb) = (pr.project(a), pr.project(b));
    let m = normalize([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
    let pm = pr.project(m);
    let dev = ((pa.0 + pb.0) / 2.0 - pm.0).hypot((pa.1 + pb.1) / 2.0 - pm.1);
    if depth < 2 || (dev > tol && depth < 16) {
        great_arc_points(pr, a, m, tol, depth + 1, out);
        great_arc_points(pr, m, b, tol, depth + 1, out);
    } else {
        out.push(pb);
    }
}

fn curve_points(pr: &Projector, curve: &Curve, normal: P3, tol: f64) -> (Vec<P2>, P3) {
    let mut pts = Vec::new();
    match curve {
        Curve::Circle { point } => {
            let m = unit(point);
            let t = normalize(cross3(normal, m));
            let quarter = [m, t, [-m[0], -m[1], -m[2]], [-t[0], -t[1], -t[2]], m];
            pts.push(pr.project(m));
            for w in quarter.windows(2) {
                great_arc_points(pr, w[0], w[1], tol, 0, &mut pts);
            }
            (pts, m)
        }
        Curve::Arc { from, mid, to } => {
            let (a, m, b) = (unit(from), unit(mid), unit(to));
            pts.push(pr.project(a));
            great_arc_points(pr, a, m, tol, 0, &mut pts);
            great_arc_points(pr, m, b, tol, 0, &mut pts);
            (pts, m)
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn word_text(p: &PictureDatum, w: &PositiveWord) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    w.0.iter()
        .map(|&r| {
            p.walls
                .iter()
                .find(|x| x.root == r)
                .map_or_else(|| r.to_string(), |x| x.label.clone())
        })
        .collect::<Vec<_>>()
        .join("")
}

/// A point inside the region: its witness plus the vertices on its closure.
/// `None` for the region around the projection point, which is unbounded in the plane.
fn anchor(p: &PictureDatum, r: &Region) -> Option<P3> {
    let sys = p.arrangement.region(&r.signs.0);
    if sys.satisfied_by(&p.projection) {
        return None;
    }
    let mut a = unit(&r.witness);
    for v in &p.vertices {
        if sys.weak.is_empty() && sys.strict.iter().all(|n| !dot(n, &v.ray).is_negative()) {
            let u = unit(&v.ray);
            a = [a[0] + u[0], a[1] + u[1], a[2] + u[2]];
        }
    }
    Some(normalize(a))
}

/// Deterministic SVG text for a picture.
pub fn render_svg(p: &PictureDatum, style: &Style) -> String {
    let pr = Projector::new(unit(&p.projection));
    let visible: Vec<usize> = (0..p.walls.len())
        .filter(|&k| p.walls[k].present || style.show_ghosts)
        .collect();

    // coarse pass fixes the extent that the flatness tolerance refers to
    let coarse: Vec<(Vec<P2>, P3)> = visible
        .iter()
        .map(|&k| {
            curve_points(
                &pr,
                &p.walls[k].curve,
                unit(&p.walls[k].normal),
                f64::INFINITY,
            )
        })
        .collect();
    let mut xs: Vec<P2> = coarse.iter().flat_map(|c| c.0.iter().copied()).collect();
    xs.extend(p.vertices.iter().map(|v| pr.project(unit(&v.ray))));
    let extent = xs
        .iter()
        .fold(1e-9f64, |m, &(x, y)| m.max(x.abs()).max(y.abs()));
    let tol = style.flatness * 2.0 * extent;
    let curves: Vec<(Vec<P2>, P3)> = visible
        .iter()
        .map(|&k| curve_points(&pr, &p.walls[k].curve, unit(&p.walls[k].normal), tol))
        .collect();

    let mut all: Vec<P2> = curves.iter().flat_map(|c| c.0.iter().copied()).collect();
    all.extend(p.vertices.iter().map(|v| pr.project(unit(&v.ray))));
    let anchors: Vec<Option<P3>> = p.regions.iter().map(|r| anchor(p, r)).collect();
    all.extend(anchors.iter().flatten().map(|&a| pr.project(a)));
    if all.is_empty() {
        all = vec![(-1.0, -1.0), (1.0, 1.0)];
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let pad = 0.08 * (x1 - x0).max(y1 - y0).max(1e-6);
    let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
    let scale = style.width / (x1 - x0);
    let height = (y1 - y0) * scale;
    let map = |(x, y): P2| ((x - x0) * scale, (y - y0) * scale);
    let pts = |v: &[P2]| {
        v.iter()
            .map(|&q| map(q))
            .map(|(x, y)| format!("{},{}", num(x), num(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(style.width),
        num(height),
        num(style.width),
        num(height)
    );
    s.push_str("<style>.wall{fill:none;stroke:#000;stroke-width:1.5}.ghost{fill:none;stroke:#bbb;stroke-width:1;stroke-dasharray:4 3}.tick{stroke:#080;stroke-width:1.5}.axis{stroke:#ccc;stroke-width:0.5}text{font-family:sans-serif;font-size:11px}.region{fill:#225;text-anchor:middle}.outer{text-anchor:start}.wall-label{fill:#800}</style>\n");
    let (ox, oy) = map((0.0, 0.0));
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="0.00" y1="{}" x2="{}" y2="{}"/>"#,
        num(oy),
        num(style.width),
        num(oy)
    );
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{}" y1="0.00" x2="{}" y2="{}"/>"#,
        num(ox),
        num(ox),
        num(height)
    );

    let tick_len = 0.04 * style.width;
    for (&k, (points, mid)) in visible.iter().zip(&curves) {
        let w = &p.walls[k];
        let class = if w.present { "wall" } else { "ghost" };
        let _ = writeln!(
            s,
            r#"<polyline class="{class}" data-root="{}" points="{}"/>"#,
            escape(&w.label),
            pts(points)
        );
        if !w.present {
            continue;
        }
        let n = unit(&w.normal);
        let m = *mid;
        let pm = map(pr.project(m));
        let side = map(pr.project(normalize([
            m[0] + 0.05 * n[0],
            m[1] + 0.05 * n[1],
            m[2] + 0.05 * n[2],
        ])));
        let (dx, dy) = (side.0 - pm.0, side.1 - pm.1);
        let len = dx.hypot(dy).max(1e-12);
        let tip = (pm.0 + dx / len * tick_len, pm.1 + dy / len * tick_len);
        let _ = writeln!(
            s,
            r#"<line class="tick" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(pm.0),
            num(pm.1),
            num(tip.0),
            num(tip.1)
        );
        let lab = (pm.0 - dx / len * tick_len, pm.1 - dy / len * tick_len);
        let _ = writeln!(
            s,
            r#"<text class="wall-label" x="{}" y="{}">{}</text>"#,
            num(lab.0),
            num(lab.1),
            escape(&w.label)
        );
    }
    for v in &p.vertices {
        let (x, y) = map(pr.project(unit(&v.ray)));
        let _ = writeln!(
            s,
            r#"<circle class="vertex" cx="{}" cy="{}" r="2.5"/>"#,
            num(x),
            num(y)
        );
    }
    if p.walls.iter().all(|w| w.present) {
        for (r, a) in p.regions.iter().zip(&anchors) {
            let (x, y) = a.map_or((12.0, 14.0), |a| map(pr.project(a)));
            let anchor_class = if a.is_some() { "" } else { " outer" };
            let _ = writeln!(
                s,
                r#"<text class="region{anchor_class}" x="{}" y="{}" data-signs="{}">{}</text>"#,
                num(x),
                num(y),
                r.signs,
                escape(&word_text(p, &r.label))
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
