//! SVG pictures of diagrams on the fundamental polygon.

use std::fmt::Write as _;

use surfcob::curve_diagram::intersections;
use surfcob::geom::{self, Pt};
use surfcob::surface_model::letter_name;
use surfcob::{CurveDiagram, Error, SurfaceModel};

const PALETTE: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Width and height in pixels.
    pub size: f64,
    pub side_labels: bool,
    /// Mark double points and pairwise intersections with their degrees.
    pub mark_points: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { size: 480.0, side_labels: true, mark_points: true }
    }
}

struct Frame {
    c: f64,
    s: f64,
}

impl Frame {
    fn at(&self, p: Pt) -> (f64, f64) {
        (self.c + self.s * p[0], self.c - self.s * p[1])
    }
}

fn f(x: f64) -> String {
    // fixed precision keeps the output byte-stable
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Renders `curves` on the polygon of `model`.  All curves must live on
/// `model`.
pub fn render_svg(model: &SurfaceModel, curves: &[CurveDiagram], o: &RenderOptions) -> Result<String, Error> {
    if curves.iter().any(|c| c.model() != model) {
        return Err(Error::Precondition("curves live on different surface models".into()));
    }
    let fr = Frame { c: o.size / 2.0, s: o.size * 0.4 };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        f(o.size)
    );
    let _ = writeln!(
        s,
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="5" markerHeight="5" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="context-stroke"/></marker></defs>"#
    );
    let corners: Vec<String> = model.corners().iter().map(|&p| {
        let (x, y) = fr.at(p);
        format!("{},{}", f(x), f(y))
    }).collect();
    let _ = writeln!(s, r##"<polygon points="{}" fill="#f7f7f7" stroke="#444" stroke-width="1.5"/>"##, corners.join(" "));
    if o.side_labels {
        for side in 0..model.num_sides() {
            let (p, q) = model.side_endpoints(side);
            let mid = geom::mid(p, q);
            let (x, y) = fr.at(geom::scale(mid, 1.08));
            let name = letter_name(model.letter_of_side(side));
            let _ = writeln!(
                s,
                r##"<text x="{}" y="{}" font-size="12" font-family="sans-serif" text-anchor="middle" dominant-baseline="middle" fill="#444">{name}</text>"##,
                f(x),
                f(y)
            );
        }
    }
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(s, r#"<g id="curve{i}" stroke="{color}" fill="none" stroke-width="2">"#);
        for seg in c.segments() {
            let (x1, y1) = fr.at(seg.a);
            let (x2, y2) = fr.at(seg.b);
            let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, f(x1), f(y1), f(x2), f(y2));
        }
        // one arrow per chord, at the middle of its longest segment
        for j in 0..c.num_chords().max(1) {
            let poly = c.chord_polyline(j);
            let n = if c.is_closed_loop() { poly.len() } else { poly.len() - 1 };
            let Some(k) = (0..n).max_by(|&a, &b| {
                let la = geom::dist(poly[a], poly[(a + 1) % poly.len()]);
                let lb = geom::dist(poly[b], poly[(b + 1) % poly.len()]);
                la.total_cmp(&lb)
            }) else {
                continue;
            };
            let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
            let (x1, y1) = fr.at(geom::lerp(p, q, 0.45));
            let (x2, y2) = fr.at(geom::lerp(p, q, 0.55));
            let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" marker-end="url(#arrow)"/>"#, f(x1), f(y1), f(x2), f(y2));
        }
        let _ = writeln!(s, "</g>");
    }
    if o.mark_points {
        let mut pts = Vec::new();
        for (i, c) in curves.iter().enumerate() {
            pts.extend(c.self_intersections().into_iter().map(|x| (x.point, x.degree)));
            for d in &curves[i + 1..] {
                pts.extend(intersections(c, d)?.into_iter().map(|x| (x.point, x.degree)));
            }
        }
        for (p, deg) in pts {
            let (x, y) = fr.at(p);
            let fill = if deg == 1 { "#000" } else { "#fff" };
            let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="3.5" fill="{fill}" stroke="#000"/>"##, f(x), f(y));
            let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="9" font-family="sans-serif">{deg}</text>"#, f(x + 5.0), f(y - 5.0));
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
