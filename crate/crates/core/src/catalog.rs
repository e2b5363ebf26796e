//! Built-in motifs: small reference diagrams and reconstructions of the
//! figure and table motifs, all drawn with the polyline builder.

use crate::error::{DptError, Result};
use crate::geometry::{build, Curve, Height};
use crate::lattice::{Matrix2, WrapVector};
use crate::motif::{FreeLoop, LoopId, Sign, TorusDiagram};
use crate::moves::{apply_move, cover, MoveSite, Side, Strand};

pub const CATALOG_VERSION: &str = "1";

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    /// Figure label or a short description of the construction.
    pub source: &'static str,
    build: fn() -> TorusDiagram,
}

impl Entry {
    pub fn diagram(&self) -> TorusDiagram {
        let mut d = (self.build)();
        d.name = self.name.to_string();
        d.sorted()
    }
}

const N: usize = 48;
const PHASE: f64 = 0.0137;

fn w(a: i64, b: i64) -> WrapVector {
    WrapVector::new(a, b)
}

fn ring(cx: f64, cy: f64, r: f64) -> Curve {
    Curve::circle((cx, cy), r, N, PHASE)
}

fn ellipse(cx: f64, cy: f64, rx: f64, ry: f64) -> Curve {
    Curve::ellipse((cx, cy), rx, ry, N, PHASE)
}

fn hline(y: f64) -> Curve {
    Curve::line((0.0131, y), w(1, 0), 5)
}

fn vline(x: f64) -> Curve {
    Curve::line((x, 0.0173), w(0, 1), 5)
}

/// Ring clasping a strand that runs along `dir` through its center.
fn clasp(cx: f64, cy: f64, r: f64, dir: (f64, f64)) -> Curve {
    ring(cx, cy, r).with_height(Height::tilt(dir.0, dir.1))
}

/// A ring linked with its own translate by `(1,0)`: a one-component chain.
fn hchain(cy: f64) -> Curve {
    ellipse(0.5, cy, 0.6, 0.09).with_height(Height::saddle(10.0))
}

/// A ring linked with its own translate by `(0,1)`, its clasp at height `clasp_y`.
fn vchain(cx: f64, clasp_y: f64) -> Curve {
    ellipse(cx, clasp_y + 0.5, 0.07, 0.55).with_height(Height::saddle(30.0))
}

/// The self-catenated circle: linked with its translates by `(1,0)` and `(0,1)`.
fn full_ring() -> Curve {
    ring(0.5, 0.5, 0.6).with_height(Height::saddle(5.0))
}

/// Adds `count` kinks, alternating signs, to the first edge or loop.
fn kinked(mut d: TorusDiagram, count: usize) -> TorusDiagram {
    for k in 0..count {
        let strand = match d.edges.iter().map(|e| e.id).min() {
            Some(e) => Strand::Edge(e),
            None => Strand::Loop(d.free_loops.iter().map(|l| l.id).min().expect("a strand")),
        };
        let sign = if k % 2 == 0 { Sign::Pos } else { Sign::Neg };
        d = apply_move(&d, &MoveSite::R1Plus { strand, side: Side::Left, sign }).expect("kink");
    }
    d
}

fn covered(d: TorusDiagram, l: Matrix2) -> TorusDiagram {
    cover(&d, &l).expect("cover").diagram
}

fn e1() -> TorusDiagram {
    let mut d = TorusDiagram::new("E1");
    d.free_loops.push(FreeLoop::new(0, w(1, 0)));
    d
}

fn e2() -> TorusDiagram {
    let mut d = e1();
    d.free_loops.push(FreeLoop { id: LoopId(1), wrap: w(1, 0), over_marks: Vec::new() });
    d
}

fn e3() -> TorusDiagram {
    build("E3", &[Curve::trefoil((0.5, 0.5), 0.1, 90)])
}

fn e4() -> TorusDiagram {
    build("E4", &[clasp(0.3, 0.5, 0.3, (0.0, 1.0)), clasp(0.8, 0.5, 0.3, (0.0, -1.0))])
}

fn e5() -> TorusDiagram {
    build("E5", &[full_ring()])
}

fn e6() -> TorusDiagram {
    build("E6", &[hline(0.47), vline(0.57).with_height(Height::flat(1.0))])
}

fn ic_a() -> TorusDiagram {
    build(
        "ic-a",
        &[
            hline(0.15),
            hline(0.5),
            hline(0.85),
            Curve::trefoil((0.5, 0.32), 0.04, 90),
            clasp(0.3, 0.85, 0.08, (1.0, 0.0)),
        ],
    )
}

/// Strands along `h` braided around a straight core: each crosses the core
/// twice per period with opposite heights, so all of them link it.
fn bundle(start: (f64, f64), h: WrapVector, amp: f64, phases: &[f64]) -> Vec<Curve> {
    let mut out = vec![Curve::line(start, h, 7)];
    for &p in phases {
        out.push(Curve::wavy_line(start, h, 41, amp, 1.0, p).with_height(Height::wave(1.0, 1.0, p + 0.25)));
    }
    out
}

fn ic_b() -> TorusDiagram {
    let mut curves = vec![
        Curve::wavy_line((0.15, 0.0173), w(0, 1), 41, 0.06, 1.0, 0.01).with_height(Height::wave(1.0, 1.0, 0.26)),
        Curve::wavy_line((0.15, 0.0173), w(0, 1), 41, -0.06, 1.0, 0.01),
    ];
    curves.extend(bundle((0.45, 0.0173), w(0, 1), 0.08, &[0.01, 0.26]));
    curves.push(ellipse(0.8, 0.25, 0.08, 0.3).with_height(Height::tilt(1.0, 0.0)));
    curves.push(ellipse(0.8, 0.75, 0.08, 0.3).with_height(Height::tilt(-1.0, 0.0)));
    build("ic-b", &curves)
}

fn ic_c() -> TorusDiagram {
    let along = (2.0, 1.0);
    build(
        "ic-c",
        &[
            Curve::line((0.0131, 0.1), w(2, 1), 7),
            Curve::line((0.0131, 0.35), w(2, 1), 7),
            clasp(0.3, 0.375, 0.15, along),
            clasp(0.7, 0.45, 0.06, along),
            clasp(0.9, 0.8, 0.06, along),
        ],
    )
}

fn ic_d() -> TorusDiagram {
    build(
        "ic-d",
        &[
            hline(0.5),
            Curve::line((0.11, 0.013), w(1, 2), 7).with_height(Height::flat(1.0)),
            Curve::line((0.77, 0.013), w(-1, 2), 7).with_height(Height::flat(2.0)),
        ],
    )
}

fn ic_e() -> TorusDiagram {
    build("ic-e", &[hchain(0.2), vchain(0.8, 0.2), ring(0.3, 0.6, 0.05)])
}

fn ic_f() -> TorusDiagram {
    build("ic-f", &[full_ring()])
}

fn ic_g() -> TorusDiagram {
    covered(e5(), Matrix2::diag(2, 2))
}

/// Full ring, horizontal chain, three lines and a knot in one cover
/// compound, plus separate unknot and Hopf link.
fn ic_h_curves() -> Vec<Curve> {
    vec![
        full_ring(),
        hchain(0.2).with_height(Height::saddle(10.0).plus(Height::tilt(0.0, 10.0))),
        hline(0.62),
        vline(0.35).with_height(Height::flat(0.3)),
        vline(0.62).with_height(Height::flat(0.3)),
        clasp(0.5, 0.62, 0.05, (1.0, 0.0)),
    ]
}

fn ic_h() -> TorusDiagram {
    let mut c = ic_h_curves();
    c.push(ring(0.45, 0.45, 0.05).with_height(Height::tilt(0.0, 1.0)));
    c.push(ring(0.52, 0.45, 0.05).with_height(Height::tilt(0.0, -1.0)));
    c.push(ring(0.48, 0.33, 0.03));
    build("ic-h", &c)
}

/// Ring of radius `r` around a strand point at height `base`, tilted steeply
/// along the strand's direction so it clasps the strand.
fn knot_on(cx: f64, cy: f64, r: f64, dir: (f64, f64), base: f64) -> Curve {
    ring(cx, cy, r).with_height(Height::tilt(10.0 * dir.0, 10.0 * dir.1).plus(Height::flat(base)))
}

/// The horizontal chain with a slight tilt, so a line through its clasps links it.
fn tilted_hchain() -> Curve {
    hchain(0.2).with_height(Height::saddle(10.0).plus(Height::tilt(0.1, 0.0)))
}

fn dp_a() -> TorusDiagram {
    build(
        "dp-a",
        &[
            ring(0.45, 0.45, 0.05).with_height(Height::tilt(0.0, 1.0)),
            ring(0.52, 0.45, 0.05).with_height(Height::tilt(0.0, -1.0)),
        ],
    )
}

fn dp_b() -> TorusDiagram {
    let mut curves = vec![
        Curve::wavy_line((0.15, 0.0173), w(0, 1), 41, 0.06, 1.0, 0.01).with_height(Height::wave(1.0, 1.0, 0.26)),
        Curve::wavy_line((0.15, 0.0173), w(0, 1), 41, -0.06, 1.0, 0.01),
    ];
    curves.extend(bundle((0.45, 0.0173), w(0, 1), 0.08, &[0.01]));
    curves.push(vline(0.75));
    build("dp-b", &curves)
}

fn dp_c() -> TorusDiagram {
    build(
        "dp-c",
        &[
            ellipse(0.8, 0.25, 0.08, 0.3).with_height(Height::tilt(1.0, 0.0)),
            ellipse(0.8, 0.75, 0.08, 0.3).with_height(Height::tilt(-1.0, 0.0)),
        ],
    )
}

fn dp_d_curves() -> Vec<Curve> {
    vec![tilted_hchain(), hline(0.205)]
}

fn dp_d() -> TorusDiagram {
    build("dp-d", &dp_d_curves())
}

fn dp_e() -> TorusDiagram {
    let mut c = vec![hline(0.5)];
    for x in [0.2, 0.5, 0.8] {
        c.push(knot_on(x, 0.5, 0.05, (1.0, 0.0), 0.0));
    }
    build("dp-e", &c)
}

fn dp_f() -> TorusDiagram {
    build(
        "dp-f",
        &[
            clasp(0.3, 0.5, 0.3, (0.0, 1.0)),
            clasp(0.8, 0.5, 0.3, (0.0, -1.0)),
            knot_on(0.3, 0.8, 0.04, (1.0, 0.0), 0.3),
            knot_on(0.3, 0.2, 0.04, (1.0, 0.0), -0.3),
            knot_on(0.8, 0.8, 0.04, (1.0, 0.0), -0.3),
        ],
    )
}

/// Point on the top of the horizontal chain above `x`, with the chain's height there.
fn hchain_top(x: f64, tilt: f64) -> (f64, f64, f64) {
    let dx = x - 0.5;
    let dy = 0.09 * (1.0 - (dx / 0.6).powi(2)).sqrt();
    (x, 0.2 + dy, 10.0 * dx * dy + tilt * dx)
}

fn dp_g() -> TorusDiagram {
    let mut c = dp_d_curves();
    let (x, y, z) = hchain_top(0.7, 0.1);
    c.push(knot_on(x, y, 0.03, (1.0, 0.0), z));
    build("dp-g", &c)
}

fn dp_h() -> TorusDiagram {
    build("dp-h", &[hchain(0.2), vchain(0.8, 0.2)])
}

fn dp_i() -> TorusDiagram {
    let (x, y, z) = hchain_top(0.3, 0.0);
    build("dp-i", &[hchain(0.2), vchain(0.8, 0.2), knot_on(x, y, 0.03, (1.0, 0.0), z)])
}

fn dp_j() -> TorusDiagram {
    build("dp-j", &[full_ring()])
}

fn dp_k() -> TorusDiagram {
    covered(e5(), Matrix2::diag(2, 1))
}

/// Knots clasping the full ring at its two diagonal points.
fn full_ring_knots() -> [Curve; 2] {
    let z = 5.0 * 0.18;
    [
        knot_on(0.924, 0.924, 0.04, (-1.0, 1.0), z),
        knot_on(0.076, 0.076, 0.04, (-1.0, 1.0), z),
    ]
}

fn dp_l() -> TorusDiagram {
    let mut c = vec![full_ring()];
    c.extend(full_ring_knots());
    build("dp-l", &c)
}

fn linked_hchain() -> Curve {
    hchain(0.2).with_height(Height::saddle(10.0).plus(Height::tilt(0.0, 10.0)))
}

fn dp_m() -> TorusDiagram {
    build("dp-m", &[full_ring(), linked_hchain()])
}

fn dp_n() -> TorusDiagram {
    let mut c = vec![full_ring(), linked_hchain()];
    c.extend(full_ring_knots());
    build("dp-n", &c)
}

fn grid(rows: &[f64], cols: &[f64]) -> Vec<Curve> {
    let mut c: Vec<Curve> = rows.iter().map(|&y| hline(y)).collect();
    c.extend(cols.iter().map(|&x| vline(x).with_height(Height::flat(1.0))));
    c
}

fn dp_o() -> TorusDiagram {
    build("dp-o", &grid(&[0.15, 0.5, 0.85], &[0.3, 0.7]))
}

fn dp_p() -> TorusDiagram {
    build("dp-p", &grid(&[0.3, 0.7], &[0.3, 0.7]))
}

fn dp_q() -> TorusDiagram {
    build("dp-q", &grid(&[0.15, 0.5, 0.85], &[0.15, 0.5, 0.85]))
}

fn dp_r() -> TorusDiagram {
    build("dp-r", &[hline(0.47), vline(0.57).with_height(Height::flat(1.0)), knot_on(0.2, 0.47, 0.05, (1.0, 0.0), 0.0)])
}

fn dp_s() -> TorusDiagram {
    build("dp-s", &[tilted_hchain(), vchain(0.8, 0.2), hline(0.205)])
}

fn dp_t() -> TorusDiagram {
    build(
        "dp-t",
        &[
            tilted_hchain(),
            vline(0.3),
            knot_on(0.3, 0.5, 0.03, (0.0, 1.0), 0.0),
            knot_on(0.3, 0.8, 0.03, (0.0, 1.0), 0.0),
        ],
    )
}

fn dp_u() -> TorusDiagram {
    build("dp-u", &[full_ring(), hline(0.62)])
}

fn dp_v_curves() -> Vec<Curve> {
    let mut c = vec![full_ring()];
    c.extend(grid(&[0.38, 0.62], &[]));
    c.push(vline(0.35).with_height(Height::flat(0.3)));
    c.push(vline(0.62).with_height(Height::flat(0.3)));
    c
}

fn dp_v() -> TorusDiagram {
    build("dp-v", &dp_v_curves())
}

fn dp_w() -> TorusDiagram {
    let mut c = dp_v_curves();
    c.push(knot_on(0.5, 0.62, 0.03, (1.0, 0.0), 0.0));
    c.push(knot_on(0.5, 0.38, 0.03, (1.0, 0.0), 0.0));
    build("dp-w", &c)
}

fn dp_x() -> TorusDiagram {
    let mut c = ic_h_curves();
    c.pop();
    build("dp-x", &c)
}

fn dp_y() -> TorusDiagram {
    let mut c = ic_h_curves();
    c.push(knot_on(0.35, 0.5, 0.03, (0.0, 1.0), 0.3));
    build("dp-y", &c)
}

// Table stand-ins. Motifs compared in the same row of distinctions share
// crossing and component counts; kinks pad the crossing number where needed.

fn t1() -> TorusDiagram {
    build("t1", &[hline(0.5), knot_on(0.3, 0.5, 0.05, (1.0, 0.0), 0.0), knot_on(0.7, 0.5, 0.05, (1.0, 0.0), 0.0)])
}

fn t2() -> TorusDiagram {
    build(
        "t2",
        &[hline(0.5), ring(0.3, 0.5, 0.1).with_height(Height::tilt(1.0, 0.0)), knot_on(0.3, 0.6, 0.03, (1.0, 0.0), 0.0)],
    )
}

fn t3() -> TorusDiagram {
    build(
        "t3",
        &[hline(0.5), knot_on(0.3, 0.5, 0.05, (1.0, 0.0), 0.0), ring(0.7, 0.5, 0.05).with_height(Height::flat(1.0))],
    )
}

fn t4() -> TorusDiagram {
    build("t4", &[hline(0.5), Curve::line((0.11, 0.013), w(1, 2), 7).with_height(Height::flat(1.0))])
}

fn t5() -> TorusDiagram {
    dp_a()
}

fn t6() -> TorusDiagram {
    build("t6", &[ring(0.45, 0.45, 0.05), ring(0.52, 0.45, 0.05).with_height(Height::flat(1.0))])
}

fn t7() -> TorusDiagram {
    e6()
}

fn t8() -> TorusDiagram {
    kinked(build("t8", &[ring(0.3, 0.5, 0.1), ring(0.7, 0.5, 0.1)]), 1)
}

fn t9() -> TorusDiagram {
    kinked(build("t9", &[hline(0.5), knot_on(0.3, 0.5, 0.05, (1.0, 0.0), 0.0)]), 6)
}

fn t10() -> TorusDiagram {
    let d = build("t10", &[knot_on(0.3, 0.5, 0.05, (1.0, 0.0), 0.0), hline(0.5)]);
    let ring_edge = d.edges.iter().map(|e| e.id).max().expect("edges");
    let d = apply_move(&d, &MoveSite::R1Plus { strand: Strand::Edge(ring_edge), side: Side::Right, sign: Sign::Pos })
        .expect("kink");
    kinked(d, 5)
}

fn t11() -> TorusDiagram {
    build("t11", &[hchain(0.2).with_height(Height::saddle(10.0).plus(Height::flat(5.0))), vchain(0.8, 0.2)])
}

fn t12() -> TorusDiagram {
    let d = build(
        "t12",
        &[
            hline(0.25),
            hline(0.75),
            vline(0.5).with_height(Height::flat(1.0)),
            Curve::line((0.0131, 0.37), w(1, 1), 7).with_height(Height::flat(2.0)),
        ],
    );
    kinked(d, 5)
}

fn t13() -> TorusDiagram {
    let d = build(
        "t13",
        &[
            hline(0.5),
            vline(0.5).with_height(Height::flat(1.0)),
            knot_on(0.2, 0.5, 0.05, (1.0, 0.0), 0.0),
            knot_on(0.8, 0.5, 0.05, (1.0, 0.0), 0.0),
        ],
    );
    kinked(d, 5)
}

fn t14() -> TorusDiagram {
    let d = build(
        "t14",
        &[
            hline(0.5),
            vline(0.5).with_height(Height::flat(1.0)),
            knot_on(0.2, 0.5, 0.05, (1.0, 0.0), 0.0),
            ring(0.5, 0.2, 0.05).with_height(Height::flat(2.0)),
        ],
    );
    kinked(d, 5)
}

fn t15() -> TorusDiagram {
    let angle = std::f64::consts::FRAC_PI_4;
    let diagonal = Curve::rotated_ellipse((0.5, 0.5), 0.78, 0.06, angle, N, PHASE)
        .with_height(Height::rotated_saddle(10.0, angle).plus(Height::flat(5.0)));
    build("t15", &[hline(0.25), hline(0.75), vline(0.5).with_height(Height::flat(1.0)), diagonal])
}

fn t16() -> TorusDiagram {
    let mut c = vec![full_ring()];
    c.push(full_ring_knots()[0].clone());
    kinked(build("t16", &c), 2)
}

fn t17() -> TorusDiagram {
    dp_k()
}

fn t18() -> TorusDiagram {
    kinked(build("t18", &[full_ring(), hline(0.62)]), 2)
}

fn t19() -> TorusDiagram {
    kinked(e4(), 4)
}

fn t20() -> TorusDiagram {
    let braid = Curve::wavy_line((0.0131, 0.5), w(1, 0), 121, 0.1, 4.0, 0.01).with_height(Height::wave(1.0, 4.0, 0.26));
    build("t20", &[hline(0.5), braid])
}


pub static ENTRIES: &[Entry] = &[
    Entry { name: "E1", source: "free loop (1,0)", build: e1 },
    Entry { name: "E2", source: "two free loops (1,0)", build: e2 },
    Entry { name: "E3", source: "disk trefoil", build: e3 },
    Entry { name: "E4", source: "meridian Hopf chain", build: e4 },
    Entry { name: "E5", source: "self-catenated circle", build: e5 },
    Entry { name: "E6", source: "free loops (1,0) and (0,1) joined by one crossing", build: e6 },
    Entry { name: "ic-a", source: "Figure interlinked-compounds (a)", build: ic_a },
    Entry { name: "ic-b", source: "Figure interlinked-compounds (b)", build: ic_b },
    Entry { name: "ic-c", source: "Figure interlinked-compounds (c)", build: ic_c },
    Entry { name: "ic-d", source: "Figure interlinked-compounds (d)", build: ic_d },
    Entry { name: "ic-e", source: "Figure interlinked-compounds (e)", build: ic_e },
    Entry { name: "ic-f", source: "Figure interlinked-compounds (f)", build: ic_f },
    Entry { name: "ic-g", source: "Figure interlinked-compounds (g)", build: ic_g },
    Entry { name: "ic-h", source: "Figure interlinked-compounds (h)", build: ic_h },
    Entry { name: "dp-a", source: "Figure DPmotifs (a)", build: dp_a },
    Entry { name: "dp-b", source: "Figure DPmotifs (b)", build: dp_b },
    Entry { name: "dp-c", source: "Figure DPmotifs (c)", build: dp_c },
    Entry { name: "dp-d", source: "Figure DPmotifs (d)", build: dp_d },
    Entry { name: "dp-e", source: "Figure DPmotifs (e)", build: dp_e },
    Entry { name: "dp-f", source: "Figure DPmotifs (f)", build: dp_f },
    Entry { name: "dp-g", source: "Figure DPmotifs (g)", build: dp_g },
    Entry { name: "dp-h", source: "Figure DPmotifs (h)", build: dp_h },
    Entry { name: "dp-i", source: "Figure DPmotifs (i)", build: dp_i },
    Entry { name: "dp-j", source: "Figure DPmotifs (j)", build: dp_j },
    Entry { name: "dp-k", source: "Figure DPmotifs (k)", build: dp_k },
    Entry { name: "dp-l", source: "Figure DPmotifs (l)", build: dp_l },
    Entry { name: "dp-m", source: "Figure DPmotifs (m)", build: dp_m },
    Entry { name: "dp-n", source: "Figure DPmotifs (n)", build: dp_n },
    Entry { name: "dp-o", source: "Figure DPmotifs (o)", build: dp_o },
    Entry { name: "dp-p", source: "Figure DPmotifs (p)", build: dp_p },
    Entry { name: "dp-q", source: "Figure DPmotifs (q)", build: dp_q },
    Entry { name: "dp-r", source: "Figure DPmotifs (r)", build: dp_r },
    Entry { name: "dp-s", source: "Figure DPmotifs (s)", build: dp_s },
    Entry { name: "dp-t", source: "Figure DPmotifs (t)", build: dp_t },
    Entry { name: "dp-u", source: "Figure DPmotifs (u)", build: dp_u },
    Entry { name: "dp-v", source: "Figure DPmotifs (v)", build: dp_v },
    Entry { name: "dp-w", source: "Figure DPmotifs (w)", build: dp_w },
    Entry { name: "dp-x", source: "Figure DPmotifs (x)", build: dp_x },
    Entry { name: "dp-y", source: "Figure DPmotifs (y)", build: dp_y },
    Entry { name: "table-1", source: "table motif 1 (stand-in)", build: t1 },
    Entry { name: "table-2", source: "table motif 2 (stand-in)", build: t2 },
    Entry { name: "table-3", source: "table motif 3 (stand-in)", build: t3 },
    Entry { name: "table-4", source: "table motif 4 (stand-in)", build: t4 },
    Entry { name: "table-5", source: "table motif 5 (stand-in)", build: t5 },
    Entry { name: "table-6", source: "table motif 6 (stand-in)", build: t6 },
    Entry { name: "table-7", source: "table motif 7 (stand-in)", build: t7 },
    Entry { name: "table-8", source: "table motif 8 (stand-in)", build: t8 },
    Entry { name: "table-9", source: "table motif 9 (stand-in)", build: t9 },
    Entry { name: "table-10", source: "table motif 10 (stand-in)", build: t10 },
    Entry { name: "table-11", source: "table motif 11 (stand-in)", build: t11 },
    Entry { name: "table-12", source: "table motif 12 (stand-in)", build: t12 },
    Entry { name: "table-13", source: "table motif 13 (stand-in)", build: t13 },
    Entry { name: "table-14", source: "table motif 14 (stand-in)", build: t14 },
    Entry { name: "table-15", source: "table motif 15 (stand-in)", build: t15 },
    Entry { name: "table-16", source: "table motif 16 (stand-in)", build: t16 },
    Entry { name: "table-17", source: "table motif 17 (stand-in)", build: t17 },
    Entry { name: "table-18", source: "table motif 18 (stand-in)", build: t18 },
    Entry { name: "table-19", source: "table motif 19 (stand-in)", build: t19 },
    Entry { name: "table-20", source: "table motif 20 (stand-in)", build: t20 },
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

pub fn entry(name: &str) -> Result<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| DptError::UnknownCatalogEntry(name.to_string()))
}

pub fn get(name: &str) -> Result<TorusDiagram> {
    entry(name).map(Entry::diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::validate;
    use std::collections::BTreeSet;

    #[test]
    fn entries_validate_and_have_unique_names() {
        let names: BTreeSet<_> = entries().iter().map(|e| e.name).collect();
        assert_eq!(names.len(), entries().len());
        for e in entries() {
            let d = e.diagram();
            assert_eq!(d.name, e.name);
            assert!(validate(&d).is_ok(), "{} does not validate", e.name);
        }
    }

    #[test]
    fn unknown_names_are_reported() {
        assert!(matches!(get("nope"), Err(DptError::UnknownCatalogEntry(_))));
    }
}
