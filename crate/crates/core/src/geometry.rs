//! Builds diagrams from closed polylines drawn in lift coordinates.
//!
//! Each curve is a polyline `p0 .. p(m-1)` closed by the segment back to
//! `p0 + homology`. Heights decide over/under at every crossing, so any
//! drawing yields a realizable diagram.

use std::f64::consts::TAU;

use crate::lattice::WrapVector;
use crate::motif::{Crossing, CrossingId, Edge, EdgeId, Endpoint, FreeLoop, Level, Port, Sign, TorusDiagram};

const EPS: f64 = 1e-9;

/// Height above the torus as a function of position on the curve.
///
/// `z = base + gx·x + gy·y + saddle·x·y + qxx·x² + qyy·y² + amp·sin(2π(freq·s + phase))`, with
/// `(x, y)` relative to the curve's center and `s ∈ [0, 1)` the fraction of
/// the polyline traversed.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Height {
    pub base: f64,
    pub gx: f64,
    pub gy: f64,
    pub saddle: f64,
    pub qxx: f64,
    pub qyy: f64,
    pub amp: f64,
    pub freq: f64,
    pub phase: f64,
}

impl Height {
    pub fn flat(base: f64) -> Self {
        Height { base, ..Default::default() }
    }

    pub fn tilt(gx: f64, gy: f64) -> Self {
        Height { gx, gy, ..Default::default() }
    }

    pub fn saddle(k: f64) -> Self {
        Height { saddle: k, ..Default::default() }
    }

    /// Saddle `k·u·w` in coordinates `u` along `angle` and `w` across it.
    pub fn rotated_saddle(k: f64, angle: f64) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        // u = c x + s y, w = -s x + c y
        Height { qxx: -k * c * s, qyy: k * c * s, saddle: k * (c * c - s * s), ..Default::default() }
    }

    pub fn wave(amp: f64, freq: f64, phase: f64) -> Self {
        Height { amp, freq, phase, ..Default::default() }
    }

    pub fn plus(self, o: Height) -> Self {
        let (amp, freq, phase) = if self.amp != 0.0 { (self.amp, self.freq, self.phase) } else { (o.amp, o.freq, o.phase) };
        Height {
            base: self.base + o.base,
            gx: self.gx + o.gx,
            gy: self.gy + o.gy,
            saddle: self.saddle + o.saddle,
            qxx: self.qxx + o.qxx,
            qyy: self.qyy + o.qyy,
            amp,
            freq,
            phase,
        }
    }

    fn at(&self, s: f64, x: f64, y: f64) -> f64 {
        self.base
            + self.gx * x
            + self.gy * y
            + self.saddle * x * y
            + self.qxx * x * x
            + self.qyy * y * y
            + self.amp * (TAU * (self.freq * s + self.phase)).sin()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub points: Vec<(f64, f64)>,
    pub homology: WrapVector,
    pub center: (f64, f64),
    pub height: Height,
}

impl Curve {
    /// Ellipse traversed counterclockwise from angle `phase`.
    pub fn ellipse(center: (f64, f64), rx: f64, ry: f64, n: usize, phase: f64) -> Self {
        let points = (0..n)
            .map(|k| {
                let a = phase + TAU * k as f64 / n as f64;
                (center.0 + rx * a.cos(), center.1 + ry * a.sin())
            })
            .collect();
        Curve { points, homology: WrapVector::ZERO, center, height: Height::default() }
    }

    /// Ellipse with semi-axis `a` along `angle` and `b` across it.
    pub fn rotated_ellipse(center: (f64, f64), a: f64, b: f64, angle: f64, n: usize, phase: f64) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        let points = (0..n)
            .map(|k| {
                let t = phase + TAU * k as f64 / n as f64;
                let (u, w) = (a * t.cos(), b * t.sin());
                (center.0 + c * u - s * w, center.1 + s * u + c * w)
            })
            .collect();
        Curve { points, homology: WrapVector::ZERO, center, height: Height::default() }
    }

    pub fn circle(center: (f64, f64), r: f64, n: usize, phase: f64) -> Self {
        Curve::ellipse(center, r, r, n, phase)
    }

    /// Straight essential curve from `start` in the direction of `h`.
    pub fn line(start: (f64, f64), h: WrapVector, n: usize) -> Self {
        Curve::wavy_line(start, h, n, 0.0, 0.0, 0.0)
    }

    /// Essential curve along `h`, displaced sideways by `amp·sin(2π(freq·s + phase))`.
    pub fn wavy_line(start: (f64, f64), h: WrapVector, n: usize, amp: f64, freq: f64, phase: f64) -> Self {
        let (hx, hy) = (h.du as f64, h.dv as f64);
        let len = (hx * hx + hy * hy).sqrt();
        let (nx, ny) = (-hy / len, hx / len);
        let points = (0..n)
            .map(|k| {
                let s = k as f64 / n as f64;
                let off = amp * (TAU * (freq * s + phase)).sin();
                (start.0 + s * hx + off * nx, start.1 + s * hy + off * ny)
            })
            .collect();
        Curve { points, homology: h, center: start, height: Height::default() }
    }

    /// The trefoil `(sin t + 2 sin 2t, cos t - 2 cos 2t)` scaled into a disk.
    pub fn trefoil(center: (f64, f64), scale: f64, n: usize) -> Self {
        let points = (0..n)
            .map(|k| {
                let t = TAU * (k as f64 + 0.5) / n as f64;
                (
                    center.0 + scale * (t.sin() + 2.0 * (2.0 * t).sin()),
                    center.1 + scale * (t.cos() - 2.0 * (2.0 * t).cos()),
                )
            })
            .collect();
        Curve { points, homology: WrapVector::ZERO, center, height: Height::wave(-1.0, 3.0, 0.5 / n as f64) }
    }

    pub fn with_height(mut self, h: Height) -> Self {
        self.height = h;
        self
    }

    /// Reverses orientation.
    pub fn reversed(mut self) -> Self {
        let first = self.points[0];
        let h = self.homology;
        let mut pts: Vec<(f64, f64)> = self.points[1..].iter().rev().copied().collect();
        pts.insert(0, (first.0 + h.du as f64, first.1 + h.dv as f64));
        self.points = pts;
        self.homology = -h;
        self
    }

    fn vertex(&self, k: usize) -> (f64, f64) {
        let m = self.points.len();
        if k < m {
            self.points[k]
        } else {
            let p = self.points[k - m];
            (p.0 + self.homology.du as f64, p.1 + self.homology.dv as f64)
        }
    }

    fn segment(&self, k: usize) -> ((f64, f64), (f64, f64)) {
        (self.vertex(k), self.vertex(k + 1))
    }

    fn point_at(&self, seg: usize, t: f64) -> (f64, f64) {
        let (a, b) = self.segment(seg);
        (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
    }

    fn height_at(&self, seg: usize, t: f64) -> f64 {
        let p = self.point_at(seg, t);
        let s = (seg as f64 + t) / self.points.len() as f64;
        self.height.at(s, p.0 - self.center.0, p.1 - self.center.1)
    }

    fn bbox(&self) -> ((f64, f64), (f64, f64)) {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for k in 0..=self.points.len() {
            let p = self.vertex(k);
            lo = (lo.0.min(p.0), lo.1.min(p.1));
            hi = (hi.0.max(p.0), hi.1.max(p.1));
        }
        (lo, hi)
    }
}

#[derive(Clone, Copy, Debug)]
struct Passage {
    curve: usize,
    seg: usize,
    t: f64,
    crossing: usize,
    level: Level,
}

fn intersect(a: ((f64, f64), (f64, f64)), b: ((f64, f64), (f64, f64))) -> Option<(f64, f64)> {
    let (p, r) = (a.0, (a.1 .0 - a.0 .0, a.1 .1 - a.0 .1));
    let (q, s) = (b.0, (b.1 .0 - b.0 .0, b.1 .1 - b.0 .1));
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom.abs() < 1e-14 {
        return None;
    }
    let qp = (q.0 - p.0, q.1 - p.1);
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    (t > -EPS && t < 1.0 + EPS && u > -EPS && u < 1.0 + EPS).then_some((t, u))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

fn lex_positive(l: (i64, i64)) -> bool {
    l.0 > 0 || (l.0 == 0 && l.1 > 0)
}

/// Builds a diagram from curves. Panics on tangencies, vertex crossings or
/// equal heights at a crossing, all of which mean the drawing needs a nudge.
pub fn build(name: &str, curves: &[Curve]) -> TorusDiagram {
    let mut crossings: Vec<Sign> = Vec::new();
    let mut passages: Vec<Passage> = Vec::new();
    let boxes: Vec<_> = curves.iter().map(Curve::bbox).collect();

    for (ci, a) in curves.iter().enumerate() {
        for (cj, b) in curves.iter().enumerate().skip(ci) {
            let (alo, ahi) = boxes[ci];
            let (blo, bhi) = boxes[cj];
            let lx = ((alo.0 - bhi.0).floor() as i64)..=((ahi.0 - blo.0).ceil() as i64);
            let ly = ((alo.1 - bhi.1).floor() as i64)..=((ahi.1 - blo.1).ceil() as i64);
            for lamx in lx.clone() {
                for lamy in ly.clone() {
                    let lam = (lamx, lamy);
                    for sa in 0..a.points.len() {
                        for sb in 0..b.points.len() {
                            if ci == cj {
                                // (sa, sb, λ) and (sb, sa, -λ) are the same crossing seen from two cells.
                                let keep = sa < sb || (sa == sb && lex_positive(lam));
                                if !keep {
                                    continue;
                                }
                            }
                            let sega = a.segment(sa);
                            let (b0, b1) = b.segment(sb);
                            let segb = ((b0.0 + lamx as f64, b0.1 + lamy as f64), (b1.0 + lamx as f64, b1.1 + lamy as f64));
                            let Some((t, u)) = intersect(sega, segb) else { continue };
                            let interior = |x: f64| x > 1e-7 && x < 1.0 - 1e-7;
                            if interior(t) && interior(u) {
                                let za = a.height_at(sa, t);
                                let zb = b.height_at(sb, u);
                                assert!(
                                    (za - zb).abs() > 1e-9,
                                    "{name}: equal heights where curves {ci} and {cj} cross"
                                );
                                let (da, db) = (
                                    (sega.1 .0 - sega.0 .0, sega.1 .1 - sega.0 .1),
                                    (segb.1 .0 - segb.0 .0, segb.1 .1 - segb.0 .1),
                                );
                                let (over_dir, under_dir, a_over) = if za > zb { (da, db, true) } else { (db, da, false) };
                                let cross = over_dir.0 * under_dir.1 - over_dir.1 * under_dir.0;
                                let id = crossings.len();
                                crossings.push(if cross > 0.0 { Sign::Pos } else { Sign::Neg });
                                let (la, lb) = if a_over { (Level::Over, Level::Under) } else { (Level::Under, Level::Over) };
                                passages.push(Passage { curve: ci, seg: sa, t, crossing: id, level: la });
                                passages.push(Passage { curve: cj, seg: sb, t: u, crossing: id, level: lb });
                            } else {
                                let shared = [sega.0, sega.1].iter().any(|p| close(*p, segb.0) || close(*p, segb.1));
                                assert!(shared, "{name}: curves {ci} and {cj} meet at a vertex");
                            }
                        }
                    }
                }
            }
        }
    }

    let mut d = TorusDiagram::new(name);
    d.crossings = crossings.iter().enumerate().map(|(k, &sign)| Crossing { id: CrossingId(k as u32), sign }).collect();
    let mut next_edge = 0u32;
    let mut next_loop = 0u32;
    for (ci, c) in curves.iter().enumerate() {
        let mut mine: Vec<Passage> = passages.iter().copied().filter(|p| p.curve == ci).collect();
        if mine.is_empty() {
            d.free_loops.push(FreeLoop::new(next_loop, c.homology));
            next_loop += 1;
            continue;
        }
        mine.sort_by(|x, y| (x.seg, x.t).partial_cmp(&(y.seg, y.t)).unwrap());
        let pos: Vec<(f64, f64)> = mine.iter().map(|p| c.point_at(p.seg, p.t)).collect();
        for k in 0..mine.len() {
            let (p, q) = (mine[k], mine[(k + 1) % mine.len()]);
            let from = pos[k];
            let mut to = pos[(k + 1) % mine.len()];
            if k + 1 == mine.len() {
                to = (to.0 + c.homology.du as f64, to.1 + c.homology.dv as f64);
            }
            let wrap = WrapVector::new(
                to.0.floor() as i64 - from.0.floor() as i64,
                to.1.floor() as i64 - from.1.floor() as i64,
            );
            d.edges.push(Edge {
                id: EdgeId(next_edge),
                from: Endpoint::new(CrossingId(p.crossing as u32), Port::new(p.level, false)),
                to: Endpoint::new(CrossingId(q.crossing as u32), Port::new(q.level, true)),
                wrap,
            });
            next_edge += 1;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::{trace_components, validate};

    #[test]
    fn essential_lines_cross_once() {
        let d = build(
            "E6",
            &[
                Curve::line((0.03, 0.47), WrapVector::new(1, 0), 4),
                Curve::line((0.57, 0.02), WrapVector::new(0, 1), 4).with_height(Height::flat(1.0)),
            ],
        );
        assert!(validate(&d).is_ok());
        assert_eq!(d.crossings.len(), 1);
        let cs = trace_components(&d).unwrap();
        assert_eq!(cs[0].homology, WrapVector::new(1, 0));
        assert_eq!(cs[1].homology, WrapVector::new(0, 1));
    }

    #[test]
    fn trefoil_has_three_crossings() {
        let d = build("trefoil", &[Curve::trefoil((0.5, 0.5), 0.1, 90)]);
        assert!(validate(&d).is_ok());
        assert_eq!(d.crossings.len(), 3);
        assert!(d.edges.iter().all(|e| e.wrap.is_zero()));
    }

    #[test]
    fn curve_without_crossings_is_free() {
        let d = build("loop", &[Curve::line((0.1, 0.5), WrapVector::new(1, 0), 3)]);
        assert_eq!(d.free_loops.len(), 1);
        assert!(d.edges.is_empty());
    }

    #[test]
    fn reversing_negates_homology() {
        let c = Curve::line((0.1, 0.5), WrapVector::new(2, 1), 5).reversed();
        assert_eq!(c.homology, WrapVector::new(-2, -1));
    }
}
