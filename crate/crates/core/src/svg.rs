//! Axis-motif drawings on the unit-square flat torus.

use std::fmt::Write;

use crate::direction::AxisMotif;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

type Point = (f64, f64);

fn px(p: Point) -> (f64, f64) {
    (MARGIN + p.0 * SIZE, MARGIN + (1.0 - p.1) * SIZE)
}

/// Pieces of the closed geodesic through `start` with direction `(a, b)`,
/// cut at the sides of the unit square.
pub fn wrapped_segments(start: Point, a: i64, b: i64) -> Vec<(Point, Point)> {
    let (dx, dy) = (a as f64, b as f64);
    let mut out = Vec::new();
    let mut p = start;
    let mut left = 1.0f64;
    while left > 1e-12 {
        let exit = |x: f64, d: f64| {
            if d > 0.0 {
                (1.0 - x) / d
            } else if d < 0.0 {
                -x / d
            } else {
                f64::INFINITY
            }
        };
        let step = exit(p.0, dx).min(exit(p.1, dy)).min(left);
        let q = (p.0 + step * dx, p.1 + step * dy);
        out.push((p, q));
        left -= step;
        // Leaving through a side re-enters on the opposite one.
        p = q;
        if dx > 0.0 && q.0 >= 1.0 - 1e-12 {
            p.0 = 0.0;
        } else if dx < 0.0 && q.0 <= 1e-12 {
            p.0 = 1.0;
        }
        if dy > 0.0 && q.1 >= 1.0 - 1e-12 {
            p.1 = 0.0;
        } else if dy < 0.0 && q.1 <= 1e-12 {
            p.1 = 1.0;
        }
    }
    out
}

/// SVG 1.1 document for the axis-motif: straight torus-knot axes, trivial
/// knots as small circles and noncontractible loops as circles around the
/// square's corner, crossing the sides as often as their boundary counts.
pub fn axis_svg(name: &str, axis: &AxisMotif) -> String {
    let total = SIZE + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total:.0}" height="{total:.0}" viewBox="0 0 {total:.0} {total:.0}">"#
    );
    let _ = writeln!(s, "<title>axis-motif of {}</title>", escape(name));
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN:.0}" y="{MARGIN:.0}" width="{SIZE:.0}" height="{SIZE:.0}" fill="none" stroke="#888" stroke-dasharray="6 4"/>"##
    );
    let _ = writeln!(s, r#"<clipPath id="square"><rect x="{MARGIN:.0}" y="{MARGIN:.0}" width="{SIZE:.0}" height="{SIZE:.0}"/></clipPath>"#);
    let _ = writeln!(s, r#"<g clip-path="url(#square)" fill="none" stroke-width="2">"#);

    for link in &axis.torus_links {
        let m = link.multiplicity.max(1);
        for k in 0..m {
            let shift = (k as f64 + 0.5) / m as f64;
            let start = if link.b != 0 { (shift / link.b.unsigned_abs() as f64, 0.0) } else { (0.0, shift / link.a.unsigned_abs() as f64) };
            let mut d = String::new();
            for (p, q) in wrapped_segments(start, link.a, link.b) {
                let (x0, y0) = px(p);
                let (x1, y1) = px(q);
                let _ = write!(d, "M{x0:.2} {y0:.2}L{x1:.2} {y1:.2}");
            }
            let _ = writeln!(s, r##"<path class="torus-axis" data-direction="({},{})" stroke="#1f5fa8" d="{d}"/>"##, link.a, link.b);
        }
    }

    for k in 0..axis.trivial_knots {
        let (row, col) = (k / 8, k % 8);
        let (x, y) = px((0.08 + 0.12 * col as f64, 0.92 - 0.12 * row as f64));
        let _ = writeln!(s, r##"<circle class="trivial-knot" cx="{x:.2}" cy="{y:.2}" r="{:.2}" stroke="#b03a2e"/>"##, 0.035 * SIZE);
    }

    for (k, &(longitude, meridian)) in axis.noncontractible_loops.iter().enumerate() {
        let r = (0.18 + 0.08 * k as f64) * SIZE;
        for corner in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
            let (x, y) = px(corner);
            let _ = writeln!(
                s,
                r##"<circle class="noncontractible-loop" data-boundary="{longitude},{meridian}" cx="{x:.2}" cy="{y:.2}" r="{r:.2}" stroke="#2e8b57"/>"##
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN:.0}" y="{:.0}" font-family="sans-serif" font-size="12">{}</text>"#,
        total - 4.0,
        escape(&axis.describe())
    );
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
