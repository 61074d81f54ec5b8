//! SVG rendering of a planar tropical curve next to its dual subdivision.
//!
//! The left panel shows the curve in the usual orientation. The right panel
//! shows the Newton polygon with its axes pointing left and down, which is
//! the orientation in which the subdivision is dual to the min-plus curve.

use std::fmt::Write;

use num_traits::ToPrimitive;
use tropical::cells::{CurveEdge, SubdivisionFace};
use tropical::{Point, Rat, TropicalPolynomial};

const PANEL: f64 = 400.0;
const GAP: f64 = 40.0;
const PAD: f64 = 20.0;
const MARGIN: f64 = 0.05;

/// Rational viewport of the curve panel.
#[derive(Clone, Debug, PartialEq)]
pub struct Viewport {
    pub xmin: Rat,
    pub ymin: Rat,
    pub xmax: Rat,
    pub ymax: Rat,
}

impl Viewport {
    /// Bounding box of `points` padded by 1 on each side.
    pub fn around(points: &[Point]) -> Viewport {
        let coord = |i: usize| points.iter().map(move |p| p.coords()[i].clone());
        let span = |i: usize| -> (Rat, Rat) {
            let lo = coord(i).min().unwrap_or_else(|| Rat::from_integer(0.into()));
            let hi = coord(i).max().unwrap_or_else(|| Rat::from_integer(0.into()));
            let one = Rat::from_integer(1.into());
            (lo - &one, hi + &one)
        };
        let (xmin, xmax) = span(0);
        let (ymin, ymax) = span(1);
        Viewport { xmin, ymin, xmax, ymax }
    }

    fn bounds(&self) -> [f64; 4] {
        let f = |r: &Rat| r.to_f64().unwrap_or(0.0);
        let (x0, y0, x1, y1) = (f(&self.xmin), f(&self.ymin), f(&self.xmax), f(&self.ymax));
        let (mx, my) = ((x1 - x0) * MARGIN, (y1 - y0) * MARGIN);
        [x0 - mx, y0 - my, x1 + mx, y1 + my]
    }
}

fn f64_of(p: &Point) -> (f64, f64) {
    (p.coords()[0].to_f64().unwrap_or(0.0), p.coords()[1].to_f64().unwrap_or(0.0))
}

/// Clips `p + t·d` for `t ∈ [t0, t1]` to the box; returns the clipped range.
fn clip(p: (f64, f64), d: (f64, f64), mut t0: f64, mut t1: f64, b: [f64; 4]) -> Option<(f64, f64)> {
    for (delta, lo, hi, origin) in [(d.0, b[0], b[2], p.0), (d.1, b[1], b[3], p.1)] {
        if delta == 0.0 {
            if origin < lo || origin > hi {
                return None;
            }
            continue;
        }
        let (mut a, mut c) = ((lo - origin) / delta, (hi - origin) / delta);
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        t0 = t0.max(a);
        t1 = t1.min(c);
    }
    (t0 <= t1).then_some((t0, t1))
}

struct Segment {
    from: (f64, f64),
    to: (f64, f64),
    arrow_from: bool,
    arrow_to: bool,
}

fn edge_segment(e: &CurveEdge, b: [f64; 4]) -> Option<Segment> {
    let d = (e.direction.0.to_f64()?, e.direction.1.to_f64()?);
    let base = f64_of(&e.anchor);
    let param = |q: &Point| {
        let (x, y) = f64_of(q);
        let len2 = d.0 * d.0 + d.1 * d.1;
        ((x - base.0) * d.0 + (y - base.1) * d.1) / len2
    };
    let t0 = e.start.as_ref().map_or(f64::NEG_INFINITY, param);
    let t1 = e.end.as_ref().map_or(f64::INFINITY, param);
    let (c0, c1) = clip(base, d, t0, t1, b)?;
    let at = |t: f64| (base.0 + t * d.0, base.1 + t * d.1);
    Some(Segment {
        from: at(c0),
        to: at(c1),
        arrow_from: e.start.is_none(),
        arrow_to: e.end.is_none(),
    })
}

fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn render(
    f: &TropicalPolynomial,
    edges: &[CurveEdge],
    vertices: &[Point],
    faces: &[SubdivisionFace],
    viewport: &Viewport,
) -> String {
    let width = 2.0 * PANEL + GAP + 2.0 * PAD;
    let height = PANEL + 2.0 * PAD;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(
        out,
        r#"  <defs>
    <marker id="arrow" markerWidth="8" markerHeight="6" refX="7" refY="3" orient="auto">
      <polygon points="0 0, 8 3, 0 6"/>
    </marker>
  </defs>"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);

    // Curve panel.
    let b = viewport.bounds();
    let sx = PANEL / (b[2] - b[0]);
    let sy = PANEL / (b[3] - b[1]);
    let to_screen = |(x, y): (f64, f64)| (PAD + (x - b[0]) * sx, PAD + (b[3] - y) * sy);
    let _ = writeln!(out, r#"  <g id="curve" stroke="black" stroke-width="2" fill="none">"#);
    let _ = writeln!(
        out,
        r#"    <rect x="{PAD:.3}" y="{PAD:.3}" width="{PANEL:.3}" height="{PANEL:.3}" stroke="gray" stroke-width="0.5"/>"#
    );
    for e in edges {
        let Some(seg) = edge_segment(e, b) else { continue };
        let (p, q) = (to_screen(seg.from), to_screen(seg.to));
        let mut attrs = String::new();
        if seg.arrow_from {
            attrs.push_str(r#" marker-start="url(#arrow)""#);
        }
        if seg.arrow_to {
            attrs.push_str(r#" marker-end="url(#arrow)""#);
        }
        let _ = writeln!(
            out,
            r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"{attrs}/>"#,
            p.0, p.1, q.0, q.1
        );
    }
    for v in vertices {
        let (x, y) = f64_of(v);
        if x < b[0] || x > b[2] || y < b[1] || y > b[3] {
            continue;
        }
        let (px, py) = to_screen((x, y));
        let _ = writeln!(out, r#"    <circle cx="{px:.3}" cy="{py:.3}" r="3" fill="black"/>"#);
    }
    let _ = writeln!(out, "  </g>");

    // Dual subdivision panel.
    let exps: Vec<(i64, i64)> = f
        .terms()
        .iter()
        .map(|t| (i64::from(t.exponent[0]), i64::from(t.exponent[1])))
        .collect();
    let dmax = exps.iter().map(|&(a, c)| a.max(c)).max().unwrap_or(0).max(1) as f64;
    let unit = (PANEL - 3.0 * PAD) / (dmax + 0.5);
    let right = PAD + PANEL + GAP + PANEL - PAD;
    let top = 2.0 * PAD;
    let dual = |(a, c): (i64, i64)| (right - a as f64 * unit, top + c as f64 * unit);
    let _ = writeln!(out, r#"  <g id="subdivision" stroke="black" stroke-width="1.5" fill="none">"#);
    let (ox, oy) = dual((0, 0));
    let _ = writeln!(
        out,
        r#"    <line x1="{ox:.3}" y1="{oy:.3}" x2="{:.3}" y2="{oy:.3}" stroke="gray" marker-end="url(#arrow)"/>"#,
        ox - (dmax + 0.5) * unit
    );
    let _ = writeln!(
        out,
        r#"    <line x1="{ox:.3}" y1="{oy:.3}" x2="{ox:.3}" y2="{:.3}" stroke="gray" marker-end="url(#arrow)"/>"#,
        oy + (dmax + 0.5) * unit
    );
    for face in faces {
        let pts = hull(face.tight_set.iter().map(|&i| exps[i]).collect());
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = dual(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(out, r#"    <polygon points="{}"/>"#, coords.join(" "));
    }
    for &p in &exps {
        let (x, y) = dual(p);
        let _ = writeln!(out, r#"    <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#);
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "</svg>");
    out
}
