use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::faces::{dart_faces, dart_start, faces, Dart, Face};
use super::lattice_moves::{gauge_shift, GaugeAssignment};
use crate::error::{DptError, Result};
use crate::lattice::WrapVector;
use crate::motif::{
    expand_over_marks, validate, Crossing, CrossingId, DiagramIndex, Edge, EdgeId, Endpoint, FreeLoop, Level, LoopId,
    Port, Sign, TorusDiagram,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strand {
    Edge(EdgeId),
    Loop(LoopId),
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strand::Edge(e) => write!(f, "{e}"),
            Strand::Loop(l) => write!(f, "{l}"),
        }
    }
}

/// Where and how to apply a Reidemeister move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MoveSite {
    /// Adds a kink on `side` of the strand.
    R1Plus { strand: Strand, side: Side, sign: Sign },
    /// Removes the kink at a crossing.
    R1Minus { crossing: CrossingId },
    /// Pushes a finger of `finger` across `target` through the face on the
    /// given sides of both. Free loops have no face and may join any face.
    R2Plus { target: Strand, target_side: Side, finger: Strand, finger_side: Side, target_over: bool },
    /// Pulls apart the bigon between two crossings.
    R2Minus { crossings: [CrossingId; 2] },
    /// Slides a strand across the triangle bounded by three crossings.
    R3 { crossings: [CrossingId; 3] },
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Side| match s {
            Side::Left => "left",
            Side::Right => "right",
        };
        match self {
            MoveSite::R1Plus { strand, side: s, sign } => write!(f, "r1+:{strand}:{}:{}", side(s), sign.value()),
            MoveSite::R1Minus { crossing } => write!(f, "r1-:{crossing}"),
            MoveSite::R2Plus { target, target_side, finger, finger_side, target_over } => write!(
                f,
                "r2+:{target}:{}:{finger}:{}:{}",
                side(target_side),
                side(finger_side),
                if *target_over { "over" } else { "under" }
            ),
            MoveSite::R2Minus { crossings: [a, b] } => write!(f, "r2-:{a}:{b}"),
            MoveSite::R3 { crossings: [a, b, c] } => write!(f, "r3:{a}:{b}:{c}"),
        }
    }
}

fn parse_side(s: &str) -> Option<Side> {
    match s {
        "left" | "l" => Some(Side::Left),
        "right" | "r" => Some(Side::Right),
        _ => None,
    }
}

fn parse_strand(s: &str) -> Option<Strand> {
    let n = |t: &str| t.parse::<u32>().ok();
    if let Some(rest) = s.strip_prefix('e') {
        n(rest).map(|k| Strand::Edge(EdgeId(k)))
    } else {
        s.strip_prefix('l').and_then(n).map(|k| Strand::Loop(LoopId(k)))
    }
}

fn parse_crossing(s: &str) -> Option<CrossingId> {
    s.strip_prefix('c')?.parse().ok().map(CrossingId)
}

impl std::str::FromStr for MoveSite {
    type Err = String;

    /// Parses the `Display` form, e.g. `r1+:e3:left:1` or `r3:c0:c1:c2`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("malformed move site {s:?}");
        let site = match parts.as_slice() {
            ["r1+", strand, side, sign] => MoveSite::R1Plus {
                strand: parse_strand(strand).ok_or_else(bad)?,
                side: parse_side(side).ok_or_else(bad)?,
                sign: sign.parse::<i8>().ok().and_then(|v| Sign::try_from(v).ok()).ok_or_else(bad)?,
            },
            ["r1-", c] => MoveSite::R1Minus { crossing: parse_crossing(c).ok_or_else(bad)? },
            ["r2+", t, ts, fi, fs, lvl] => MoveSite::R2Plus {
                target: parse_strand(t).ok_or_else(bad)?,
                target_side: parse_side(ts).ok_or_else(bad)?,
                finger: parse_strand(fi).ok_or_else(bad)?,
                finger_side: parse_side(fs).ok_or_else(bad)?,
                target_over: match *lvl {
                    "over" => true,
                    "under" => false,
                    _ => return Err(bad()),
                },
            },
            ["r2-", a, b] => MoveSite::R2Minus {
                crossings: [parse_crossing(a).ok_or_else(bad)?, parse_crossing(b).ok_or_else(bad)?],
            },
            ["r3", a, b, c] => MoveSite::R3 {
                crossings: [
                    parse_crossing(a).ok_or_else(bad)?,
                    parse_crossing(b).ok_or_else(bad)?,
                    parse_crossing(c).ok_or_else(bad)?,
                ],
            },
            _ => return Err(bad()),
        };
        Ok(site)
    }
}

fn inapplicable(msg: impl Into<String>) -> DptError {
    DptError::Inapplicable(msg.into())
}

/// Applies a Reidemeister move, checking that the site admits it.
pub fn apply_move(d: &TorusDiagram, site: &MoveSite) -> Result<TorusDiagram> {
    let report = validate(d);
    if !report.is_ok() {
        return Err(DptError::InvalidDiagram(report.violations));
    }
    let d = expand_over_marks(d);
    match *site {
        MoveSite::R1Plus { strand, side, sign } => r1_plus(&d, strand, side, sign),
        MoveSite::R1Minus { crossing } => r1_minus(&d, crossing),
        MoveSite::R2Plus { target, target_side, finger, finger_side, target_over } => {
            r2_plus(&d, (target, target_side), (finger, finger_side), target_over)
        }
        MoveSite::R2Minus { crossings } => r2_minus(&d, crossings),
        MoveSite::R3 { crossings } => r3(&d, crossings),
    }
}

struct Analyzed {
    index: DiagramIndex,
    faces: Vec<Face>,
}

fn analyze(d: &TorusDiagram) -> Analyzed {
    let index = DiagramIndex::new(d);
    let faces = faces(d, &index);
    Analyzed { index, faces }
}

fn edge_index(d: &TorusDiagram, id: EdgeId) -> Result<usize> {
    d.edges.iter().position(|e| e.id == id).ok_or_else(|| inapplicable(format!("no edge {id}")))
}

fn loop_index(d: &TorusDiagram, id: LoopId) -> Result<usize> {
    d.free_loops.iter().position(|l| l.id == id).ok_or_else(|| inapplicable(format!("no free loop {id}")))
}

/// Removes crossings and joins the strands passing through them. Strands that
/// close up entirely inside the removed set become free loops.
fn splice_out(d: &TorusDiagram, removed: &BTreeSet<CrossingId>) -> TorusDiagram {
    let index = DiagramIndex::new(d);
    let mut out = TorusDiagram::new(d.name.clone());
    out.crossings = d.crossings.iter().filter(|c| !removed.contains(&c.id)).copied().collect();
    out.free_loops = d.free_loops.clone();
    let mut used = vec![false; d.edges.len()];
    for (i, e) in d.edges.iter().enumerate() {
        if removed.contains(&e.from.crossing) {
            continue;
        }
        let mut wrap = e.wrap;
        let mut cur = i;
        used[i] = true;
        while removed.contains(&d.edges[cur].to.crossing) {
            cur = index.successor(d, cur);
            used[cur] = true;
            wrap += d.edges[cur].wrap;
        }
        out.edges.push(Edge { id: e.id, from: e.from, to: d.edges[cur].to, wrap });
    }
    let mut next_loop = d.next_loop_id();
    for start in 0..d.edges.len() {
        if used[start] {
            continue;
        }
        let mut wrap = WrapVector::ZERO;
        let mut cur = start;
        loop {
            used[cur] = true;
            wrap += d.edges[cur].wrap;
            cur = index.successor(d, cur);
            if cur == start {
                break;
            }
        }
        out.free_loops.push(FreeLoop::new(next_loop, wrap));
        next_loop += 1;
    }
    out
}

fn r1_plus(d: &TorusDiagram, strand: Strand, side: Side, sign: Sign) -> Result<TorusDiagram> {
    let first = if (side == Side::Left) == (sign == Sign::Neg) { Level::Over } else { Level::Under };
    let second = match first {
        Level::Over => Level::Under,
        Level::Under => Level::Over,
    };
    let mut out = d.clone();
    let c = CrossingId(d.next_crossing_id());
    let mut next_edge = d.next_edge_id();
    let mut fresh = || {
        next_edge += 1;
        EdgeId(next_edge - 1)
    };
    out.crossings.push(Crossing { id: c, sign });
    let kink = Edge {
        id: fresh(),
        from: Endpoint::new(c, Port::new(first, false)),
        to: Endpoint::new(c, Port::new(second, true)),
        wrap: WrapVector::ZERO,
    };
    match strand {
        Strand::Edge(id) => {
            let i = edge_index(d, id)?;
            let e = d.edges[i];
            out.edges[i] = Edge { id: e.id, from: e.from, to: Endpoint::new(c, Port::new(first, true)), wrap: WrapVector::ZERO };
            out.edges.push(kink);
            out.edges.push(Edge { id: fresh(), from: Endpoint::new(c, Port::new(second, false)), to: e.to, wrap: e.wrap });
        }
        Strand::Loop(id) => {
            let i = loop_index(d, id)?;
            let l = out.free_loops.remove(i);
            out.edges.push(kink);
            out.edges.push(Edge {
                id: fresh(),
                from: Endpoint::new(c, Port::new(second, false)),
                to: Endpoint::new(c, Port::new(first, true)),
                wrap: l.wrap,
            });
        }
    }
    Ok(out)
}

fn r1_minus(d: &TorusDiagram, crossing: CrossingId) -> Result<TorusDiagram> {
    if d.crossing(crossing).is_none() {
        return Err(inapplicable(format!("no crossing {crossing}")));
    }
    let a = analyze(d);
    let found = a.faces.iter().any(|f| {
        f.darts.len() == 1 && f.is_disk() && {
            let e = &d.edges[f.darts[0].edge];
            e.from.crossing == crossing && e.to.crossing == crossing
        }
    });
    if !found {
        return Err(inapplicable(format!("R1-: no monogon disk face at {crossing}")));
    }
    Ok(splice_out(d, &BTreeSet::from([crossing])))
}

/// Dart of an edge strand for the face on the given side.
fn side_dart(edge: usize, side: Side) -> Dart {
    Dart { edge, forward: side == Side::Left }
}

fn r2_plus(d: &TorusDiagram, target: (Strand, Side), finger: (Strand, Side), target_over: bool) -> Result<TorusDiagram> {
    if target.0 == finger.0 {
        return Err(inapplicable("R2+: a strand cannot pass across itself here"));
    }
    // Offset of the crossings' cell from the finger's tail, measured in a
    // lift of the shared face; free loops carry no position.
    let mut shift = WrapVector::ZERO;
    if let (Strand::Edge(t), Strand::Edge(f)) = (target.0, finger.0) {
        let (ti, fi) = (edge_index(d, t)?, edge_index(d, f)?);
        let a = analyze(d);
        let where_ = dart_faces(&a.faces);
        let (td, fd) = (side_dart(ti, target.1), side_dart(fi, finger.1));
        let (tf, tk) = where_[&td];
        let (ff, fk) = where_[&fd];
        if tf != ff {
            return Err(inapplicable(format!("R2+: {t} and {f} do not share a face on the chosen sides")));
        }
        let face = &a.faces[tf];
        if !face.is_disk() {
            return Err(inapplicable("R2+: the shared face is not a disk"));
        }
        let pos = face.positions(d);
        let tail = |dart: Dart, k: usize| if dart.forward { pos[k] } else { pos[k] - d.edges[dart.edge].wrap };
        shift = tail(td, tk) - tail(fd, fk);
    }

    let orient = |s: Side| if s == Side::Left { 1 } else { -1 };
    let flip = orient(target.1) * orient(finger.1);
    let base = if target_over { [Sign::Pos, Sign::Neg] } else { [Sign::Neg, Sign::Pos] };
    let signs = base.map(|s| if flip > 0 { s } else { s.flip() });

    let mut out = d.clone();
    let c0 = d.next_crossing_id();
    let cs = [CrossingId(c0), CrossingId(c0 + 1)];
    out.crossings.push(Crossing { id: cs[0], sign: signs[0] });
    out.crossings.push(Crossing { id: cs[1], sign: signs[1] });
    let target_order = if target.1 == Side::Left { [cs[0], cs[1]] } else { [cs[1], cs[0]] };
    let finger_order = if finger.1 == Side::Left { [cs[1], cs[0]] } else { [cs[0], cs[1]] };
    let (tl, fl) = if target_over { (Level::Over, Level::Under) } else { (Level::Under, Level::Over) };

    let mut next_edge = d.next_edge_id();
    let mut split = |out: &mut TorusDiagram, strand: Strand, order: [CrossingId; 2], level: Level, lead: WrapVector| -> Result<()> {
        let mut fresh = || {
            next_edge += 1;
            EdgeId(next_edge - 1)
        };
        let middle = Edge {
            id: fresh(),
            from: Endpoint::new(order[0], Port::new(level, false)),
            to: Endpoint::new(order[1], Port::new(level, true)),
            wrap: WrapVector::ZERO,
        };
        match strand {
            Strand::Edge(id) => {
                let i = edge_index(out, id)?;
                let e = out.edges[i];
                out.edges[i] = Edge { id: e.id, from: e.from, to: Endpoint::new(order[0], Port::new(level, true)), wrap: lead };
                out.edges.push(middle);
                out.edges.push(Edge {
                    id: fresh(),
                    from: Endpoint::new(order[1], Port::new(level, false)),
                    to: e.to,
                    wrap: e.wrap - lead,
                });
            }
            Strand::Loop(id) => {
                let i = loop_index(out, id)?;
                let l = out.free_loops.remove(i);
                out.edges.push(middle);
                out.edges.push(Edge {
                    id: fresh(),
                    from: Endpoint::new(order[1], Port::new(level, false)),
                    to: Endpoint::new(order[0], Port::new(level, true)),
                    wrap: l.wrap,
                });
            }
        }
        Ok(())
    };
    split(&mut out, target.0, target_order, tl, WrapVector::ZERO)?;
    split(&mut out, finger.0, finger_order, fl, shift)?;
    Ok(out)
}

/// The two edges of a bigon face when they form an R2 pair.
fn r2_bigon(d: &TorusDiagram, f: &Face) -> Option<[CrossingId; 2]> {
    if f.darts.len() != 2 || !f.is_disk() || f.darts[0].edge == f.darts[1].edge {
        return None;
    }
    let (x, y) = (&d.edges[f.darts[0].edge], &d.edges[f.darts[1].edge]);
    let a = dart_start(d, f.darts[0]).0;
    let b = dart_start(d, f.darts[1]).0;
    if a == b {
        return None;
    }
    let uniform = |e: &Edge| (e.from.port.level() == e.to.port.level()).then_some(e.from.port.level());
    match (uniform(x), uniform(y)) {
        (Some(l1), Some(l2)) if l1 != l2 => Some([a.min(b), a.max(b)]),
        _ => None,
    }
}

fn r2_minus(d: &TorusDiagram, crossings: [CrossingId; 2]) -> Result<TorusDiagram> {
    let mut want = crossings;
    want.sort();
    let a = analyze(d);
    if !a.faces.iter().any(|f| r2_bigon(d, f) == Some(want)) {
        return Err(inapplicable(format!(
            "R2-: no disk bigon with an over/under pair between {} and {}",
            crossings[0], crossings[1]
        )));
    }
    Ok(splice_out(d, &want.into_iter().collect()))
}

/// Crossings of a triangle face that admits R3.
fn r3_triangle(d: &TorusDiagram, f: &Face) -> Option<[CrossingId; 3]> {
    if f.darts.len() != 3 || !f.is_disk() {
        return None;
    }
    let mut cs: Vec<CrossingId> = f.darts.iter().map(|x| dart_start(d, *x).0).collect();
    let edges: HashSet<usize> = f.darts.iter().map(|x| x.edge).collect();
    cs.sort();
    cs.dedup();
    if cs.len() != 3 || edges.len() != 3 {
        return None;
    }
    let top = f.darts.iter().any(|x| {
        let e = &d.edges[x.edge];
        e.from.port.level() == Level::Over && e.to.port.level() == Level::Over
    });
    top.then(|| [cs[0], cs[1], cs[2]])
}

fn r3(d: &TorusDiagram, crossings: [CrossingId; 3]) -> Result<TorusDiagram> {
    let mut want = crossings;
    want.sort();
    let a = analyze(d);
    let Some(face) = a.faces.iter().find(|f| r3_triangle(d, f) == Some(want)) else {
        return Err(inapplicable(format!(
            "R3: no disk triangle at {}, {}, {} with one strand over both others",
            crossings[0], crossings[1], crossings[2]
        )));
    };
    // Bring the triangle into a single cell so its edges carry no wrap.
    let pos = face.positions(d);
    let gauge: GaugeAssignment =
        face.darts.iter().zip(&pos).map(|(dart, p)| (dart_start(d, *dart).0, -*p)).collect();
    let mut out = gauge_shift(d, &gauge);
    let index = &a.index;
    let mut updates: Vec<(usize, Option<Endpoint>, Option<Endpoint>)> = Vec::new();
    for dart in &face.darts {
        let x = out.edges[dart.edge];
        let (p, q) = (x.from.crossing, x.to.crossing);
        let (lp, lq) = (x.from.port.level(), x.to.port.level());
        let before = index.edge_at(p, Port::new(lp, true));
        let after = index.edge_at(q, Port::new(lq, false));
        updates.push((dart.edge, Some(Endpoint::new(q, Port::new(lq, false))), Some(Endpoint::new(p, Port::new(lp, true)))));
        updates.push((before, None, Some(Endpoint::new(q, Port::new(lq, true)))));
        updates.push((after, Some(Endpoint::new(p, Port::new(lp, false))), None));
    }
    for (e, from, to) in updates {
        if let Some(f) = from {
            out.edges[e].from = f;
        }
        if let Some(t) = to {
            out.edges[e].to = t;
        }
    }
    Ok(out)
}

/// Every site where a move of each kind applies. R1+ and R2+ sites are
/// listed for every strand and side, so the list grows with the diagram.
pub fn applicable_sites(d: &TorusDiagram) -> Vec<MoveSite> {
    let d = expand_over_marks(d);
    let a = analyze(&d);
    let mut out = Vec::new();
    let strands: Vec<Strand> = d
        .edges
        .iter()
        .map(|e| Strand::Edge(e.id))
        .chain(d.free_loops.iter().map(|l| Strand::Loop(l.id)))
        .collect();
    for s in &strands {
        for side in [Side::Left, Side::Right] {
            for sign in [Sign::Pos, Sign::Neg] {
                out.push(MoveSite::R1Plus { strand: *s, side, sign });
            }
        }
    }
    out.extend(r2_plus_sites(&d, &a));
    for f in &a.faces {
        if f.darts.len() == 1 && f.is_disk() {
            let e = &d.edges[f.darts[0].edge];
            if e.from.crossing == e.to.crossing {
                out.push(MoveSite::R1Minus { crossing: e.from.crossing });
            }
        }
        if let Some(cs) = r2_bigon(&d, f) {
            out.push(MoveSite::R2Minus { crossings: cs });
        }
        if let Some(cs) = r3_triangle(&d, f) {
            out.push(MoveSite::R3 { crossings: cs });
        }
    }
    out.sort_by_cached_key(|s| s.to_string());
    out.dedup();
    out
}

fn r2_plus_sites(d: &TorusDiagram, a: &Analyzed) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let side_of = |dart: &Dart| if dart.forward { Side::Left } else { Side::Right };
    for f in a.faces.iter().filter(|f| f.is_disk()) {
        for x in &f.darts {
            for y in &f.darts {
                if x.edge == y.edge {
                    continue;
                }
                for target_over in [true, false] {
                    out.push(MoveSite::R2Plus {
                        target: Strand::Edge(d.edges[x.edge].id),
                        target_side: side_of(x),
                        finger: Strand::Edge(d.edges[y.edge].id),
                        finger_side: side_of(y),
                        target_over,
                    });
                }
            }
        }
    }
    let loops: Vec<Strand> = d.free_loops.iter().map(|l| Strand::Loop(l.id)).collect();
    let edges: Vec<Strand> = d.edges.iter().map(|e| Strand::Edge(e.id)).collect();
    for l in &loops {
        for other in loops.iter().chain(edges.iter()) {
            if other == l {
                continue;
            }
            for (ls, os, target_over) in [
                (Side::Left, Side::Left, true),
                (Side::Left, Side::Right, false),
                (Side::Right, Side::Left, false),
            ] {
                out.push(MoveSite::R2Plus { target: *other, target_side: os, finger: *l, finger_side: ls, target_over });
            }
        }
    }
    out
}
