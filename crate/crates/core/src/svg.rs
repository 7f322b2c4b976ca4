//! SVG pictures of honeycombs.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::breaking::Coloring;
use crate::error::Error;
use crate::honeycomb::GlHoneycomb;
use crate::moebius::{boundary_mh, MoebiusHoneycomb};
use crate::plane::{BPoint, Dir};
use crate::tinkertoy::{build_gl, quotient};

/// Canvas units per lattice step.
pub const UNIT: f64 = 40.0;
const PAD: f64 = 40.0;

/// Canvas position of a point of the plane `x + y + z = 0`.
pub fn project(p: &BPoint) -> (f64, f64) {
    let (x, y, z) = (p.x.to_f64(), p.y.to_f64(), p.z.to_f64());
    let s = UNIT / 2f64.sqrt();
    (s * (x - y) / 2f64.sqrt(), s * (x + y - 2.0 * z) / 6f64.sqrt())
}

#[derive(Clone, Debug, Default)]
pub struct Drawing {
    segments: BTreeMap<(BPoint, BPoint), bool>,
    dots: BTreeMap<BPoint, bool>,
    labels: Vec<(BPoint, String)>,
}

impl Drawing {
    pub fn segment(&mut self, a: &BPoint, b: &BPoint, white: bool) {
        self.dot(a, false);
        self.dot(b, false);
        if a != b {
            let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            *self.segments.entry(key).or_insert(white) |= white;
        }
    }

    pub fn dot(&mut self, p: &BPoint, white: bool) {
        *self.dots.entry(p.clone()).or_insert(white) |= white;
    }

    pub fn label(&mut self, p: &BPoint, text: String) {
        self.labels.push((p.clone(), text));
    }

    pub fn dot_count(&self) -> usize {
        self.dots.len()
    }

    pub fn to_svg(&self) -> String {
        let pts: Vec<(f64, f64)> = self.dots.keys().map(project).collect();
        let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        if let Some(&(x, y)) = pts.first() {
            (x0, y0, x1, y1) = (x, y, x, y);
        }
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let (x0, y0) = (x0 - PAD, y0 - PAD);
        let (w, h) = (x1 - x0 + PAD, y1 - y0 + PAD);
        let mut out = String::new();
        writeln!(out, r##"<?xml version="1.0" encoding="UTF-8"?>"##).unwrap();
        writeln!(
            out,
            r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="{x0:.3} {y0:.3} {w:.3} {h:.3}">"##
        )
        .unwrap();
        writeln!(out, r##"<g stroke="#bbbbbb" stroke-width="0.5" stroke-dasharray="1 3">"##).unwrap();
        for line in lattice_lines(&self.dots.keys().cloned().collect::<Vec<_>>()) {
            writeln!(out, "{line}").unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, r##"<g stroke-width="2" stroke-linecap="round">"##).unwrap();
        for ((a, b), white) in &self.segments {
            let ((ax, ay), (bx, by)) = (project(a), project(b));
            let color = if *white { "#3b82c4" } else { "#000000" };
            writeln!(out, r##"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" stroke="{color}"/>"##).unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, r##"<g stroke="#000000" stroke-width="1">"##).unwrap();
        for (p, white) in &self.dots {
            let (x, y) = project(p);
            let fill = if *white { "#ffffff" } else { "#000000" };
            writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{fill}"/>"##).unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, r##"<g font-family="sans-serif" font-size="10" fill="#444444">"##).unwrap();
        for (p, text) in &self.labels {
            let (x, y) = project(p);
            writeln!(out, r##"<text x="{:.3}" y="{:.3}">{}</text>"##, x + 5.0, y - 5.0, escape(text)).unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, "</svg>").unwrap();
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Dotted lattice lines through the bounding box of `pts`.
fn lattice_lines(pts: &[BPoint]) -> Vec<String> {
    let mut out = Vec::new();
    if pts.is_empty() {
        return out;
    }
    let coord = |p: &BPoint, k: usize| p.coord(k).to_f64();
    let mut span = 1.0f64;
    for k in 0..3 {
        let lo = pts.iter().map(|p| coord(p, k)).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|p| coord(p, k)).fold(f64::NEG_INFINITY, f64::max);
        span = span.max(hi - lo + 2.0);
    }
    for dir in Dir::ALL {
        let k = dir.const_index();
        let lo = pts.iter().map(|p| coord(p, k)).fold(f64::INFINITY, f64::min).floor() as i64 - 1;
        let hi = pts.iter().map(|p| coord(p, k)).fold(f64::NEG_INFINITY, f64::max).ceil() as i64 + 1;
        let v = dir.vector();
        let centre: Vec<f64> = (0..3).map(|t| pts.iter().map(|p| coord(p, t)).sum::<f64>() / pts.len() as f64).collect();
        for c in lo..=hi {
            // nearest point of the line to the centre of the picture
            let mut base = [0.0; 3];
            let shift = (c as f64 - centre[k]) / 2.0;
            for t in 0..3 {
                base[t] = if t == k { c as f64 } else { centre[t] - shift };
            }
            let end = |s: f64| {
                let q: Vec<f64> = (0..3).map(|t| base[t] + s * v[t] as f64).collect();
                let scale = UNIT / 2f64.sqrt();
                (
                    scale * (q[0] - q[1]) / 2f64.sqrt(),
                    scale * (q[0] + q[1] - 2.0 * q[2]) / 6f64.sqrt(),
                )
            };
            let ((ax, ay), (bx, by)) = (end(-span), end(span));
            out.push(format!(r##"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"##));
        }
    }
    out
}

pub fn draw_gl(h: &GlHoneycomb) -> Result<Drawing, Error> {
    let t = build_gl(h.n)?;
    let mut d = Drawing::default();
    for e in &t.edges {
        d.segment(h.get(&e.tail)?, h.get(&e.head)?, false);
    }
    for v in &t.vertices {
        d.dot(h.get(v)?, false);
    }
    let families = [("λ", &t.lambda_family, 0), ("μ", &t.mu_family, 1), ("ν", &t.nu_family, 2)];
    for (name, fam, k) in families {
        for (i, v) in fam.iter().enumerate() {
            let p = h.get(v)?;
            d.label(p, format!("{name}{}={}", i + 1, p.coord(k)));
        }
    }
    Ok(d)
}

/// One copy of every edge of the strip quotient, drawn from its representative.
pub fn draw_mh(h: &MoebiusHoneycomb, coloring: Option<&Coloring>) -> Result<Drawing, Error> {
    let g = quotient(h.n)?;
    let mut d = Drawing::default();
    for (k, q) in g.edges.iter().enumerate() {
        let e = q.id.edge();
        let white = coloring.is_some_and(|c| c.edge_white[k]);
        d.segment(&h.position(&e.tail)?, &h.position(&e.head)?, white);
    }
    let reps = h.representatives()?;
    for (v, p) in reps.iter().enumerate() {
        d.dot(p, coloring.is_some_and(|c| c.vertex_white[v]));
    }
    let xi = boundary_mh(h)?;
    for (j, x) in xi.xi.iter().enumerate() {
        d.label(&reps[g.vertex_index(0, j + 1)], format!("ξ{}={x}", j + 1));
    }
    Ok(d)
}

pub fn render_gl(h: &GlHoneycomb) -> Result<String, Error> {
    Ok(draw_gl(h)?.to_svg())
}

pub fn render_mh(h: &MoebiusHoneycomb, coloring: Option<&Coloring>) -> Result<String, Error> {
    Ok(draw_mh(h, coloring)?.to_svg())
}
