use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::*;
use crate::lattice::WrapVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    DuplicateId { what: String, id: u32 },
    UnboundPort { crossing: CrossingId, port: Port, detail: String },
    PortBoundTwice { crossing: CrossingId, port: Port },
    WrongPortDirection { edge: EdgeId, detail: String },
    BadOverMark { free_loop: LoopId, detail: String },
}

impl Violation {
    /// Short category name, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::DuplicateId { .. } => "duplicate id",
            Violation::UnboundPort { .. } => "unbound port",
            Violation::PortBoundTwice { .. } => "port bound twice",
            Violation::WrongPortDirection { .. } => "wrong port direction",
            Violation::BadOverMark { .. } => "bad over mark",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { what, id } => write!(f, "duplicate id: {what} {id}"),
            Violation::UnboundPort { crossing, port, detail } => {
                write!(f, "unbound port: {crossing}:{port} ({detail})")
            }
            Violation::PortBoundTwice { crossing, port } => write!(f, "port bound twice: {crossing}:{port}"),
            Violation::WrongPortDirection { edge, detail } => write!(f, "wrong port direction: {edge} {detail}"),
            Violation::BadOverMark { free_loop, detail } => write!(f, "bad over mark: {free_loop} {detail}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structural consistency check. Geometric realizability on the torus is not
/// checked.
pub fn validate(d: &TorusDiagram) -> ValidationReport {
    let mut violations = Vec::new();

    let mut seen = HashSet::new();
    for c in &d.crossings {
        if !seen.insert(c.id) {
            violations.push(Violation::DuplicateId { what: "crossing".into(), id: c.id.0 });
        }
    }
    let mut seen_e = HashSet::new();
    for e in &d.edges {
        if !seen_e.insert(e.id) {
            violations.push(Violation::DuplicateId { what: "edge".into(), id: e.id.0 });
        }
    }
    let mut seen_l = HashSet::new();
    for l in &d.free_loops {
        if !seen_l.insert(l.id) {
            violations.push(Violation::DuplicateId { what: "free loop".into(), id: l.id.0 });
        }
    }

    let mut binding: BTreeMap<(CrossingId, Port), usize> = BTreeMap::new();
    for e in &d.edges {
        if e.from.port.is_in() {
            violations.push(Violation::WrongPortDirection {
                edge: e.id,
                detail: format!("tail bound to in-port {}", e.from.port),
            });
        }
        if !e.to.port.is_in() {
            violations.push(Violation::WrongPortDirection {
                edge: e.id,
                detail: format!("head bound to out-port {}", e.to.port),
            });
        }
        for (end, ep) in [("tail", e.from), ("head", e.to)] {
            if !seen.contains(&ep.crossing) {
                violations.push(Violation::UnboundPort {
                    crossing: ep.crossing,
                    port: ep.port,
                    detail: format!("{} {end} references a missing crossing", e.id),
                });
                continue;
            }
            *binding.entry((ep.crossing, ep.port)).or_insert(0) += 1;
        }
    }
    for c in &d.crossings {
        for p in Port::ALL {
            match binding.get(&(c.id, p)).copied().unwrap_or(0) {
                0 => violations.push(Violation::UnboundPort {
                    crossing: c.id,
                    port: p,
                    detail: "no edge attached".into(),
                }),
                1 => {}
                _ => violations.push(Violation::PortBoundTwice { crossing: c.id, port: p }),
            }
        }
    }

    violations.extend(check_over_marks(d));
    ValidationReport { violations }
}

fn check_over_marks(d: &TorusDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let ids: HashSet<LoopId> = d.free_loops.iter().map(|l| l.id).collect();
    let declaring: HashSet<LoopId> =
        d.free_loops.iter().filter(|l| !l.over_marks.is_empty()).map(|l| l.id).collect();
    for l in &d.free_loops {
        for m in &l.over_marks {
            let problem = if m.other == l.id {
                Some("references itself".to_string())
            } else if !ids.contains(&m.other) {
                Some(format!("references missing loop {}", m.other))
            } else if declaring.contains(&m.other) {
                Some(format!("target {} declares its own marks", m.other))
            } else {
                None
            };
            if let Some(detail) = problem {
                out.push(Violation::BadOverMark { free_loop: l.id, detail });
            }
        }
    }
    out
}

/// Rewrites free loops that carry over marks into edged strands with real
/// crossings. Marks on a loop produce its passages in declaration order; a
/// referenced loop meets its passages in global declaration order.
pub fn expand_over_marks(d: &TorusDiagram) -> TorusDiagram {
    if !d.has_over_marks() {
        return d.clone();
    }
    let mut out = TorusDiagram {
        name: d.name.clone(),
        crossings: d.crossings.clone(),
        edges: d.edges.clone(),
        free_loops: Vec::new(),
    };
    let mut next_c = d.next_crossing_id();
    let mut next_e = d.next_edge_id();

    // passages per loop: (crossing, level, lift position)
    let mut passages: BTreeMap<LoopId, Vec<(CrossingId, Level, WrapVector)>> = BTreeMap::new();
    for l in &d.free_loops {
        for m in &l.over_marks {
            let c = CrossingId(next_c);
            next_c += 1;
            out.crossings.push(Crossing { id: c, sign: m.sign });
            let (mine, theirs) = if m.over { (Level::Over, Level::Under) } else { (Level::Under, Level::Over) };
            passages.entry(l.id).or_default().push((c, mine, WrapVector::ZERO));
            passages.entry(m.other).or_default().push((c, theirs, m.translate));
        }
    }
    let wraps: HashMap<LoopId, WrapVector> = d.free_loops.iter().map(|l| (l.id, l.wrap)).collect();
    for l in &d.free_loops {
        let Some(ps) = passages.get(&l.id) else {
            out.free_loops.push(FreeLoop { id: l.id, wrap: l.wrap, over_marks: Vec::new() });
            continue;
        };
        let total = wraps[&l.id];
        for (k, &(c, level, pos)) in ps.iter().enumerate() {
            let (nc, nlevel, npos) = if k + 1 < ps.len() {
                ps[k + 1]
            } else {
                let (c0, l0, p0) = ps[0];
                (c0, l0, p0 + total)
            };
            out.edges.push(Edge {
                id: EdgeId(next_e),
                from: Endpoint::new(c, Port::new(level, false)),
                to: Endpoint::new(nc, Port::new(nlevel, true)),
                wrap: npos - pos,
            });
            next_e += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> TorusDiagram {
        let mut d = TorusDiagram::new("E1");
        d.free_loops.push(FreeLoop::new(0, WrapVector::new(1, 0)));
        d
    }

    #[test]
    fn single_free_loop_is_valid() {
        assert!(validate(&e1()).is_ok());
    }

    #[test]
    fn dangling_edge_reports_unbound_port() {
        let mut d = e1();
        d.edges.push(Edge {
            id: EdgeId(0),
            from: Endpoint::new(CrossingId(7), Port::OverOut),
            to: Endpoint::new(CrossingId(7), Port::OverIn),
            wrap: WrapVector::ZERO,
        });
        let r = validate(&d);
        assert!(!r.is_ok());
        assert!(r.violations.iter().all(|v| v.kind() == "unbound port"));
        assert!(r.violations[0].to_string().contains("c7"));
    }

    #[test]
    fn crossing_without_edges_lists_all_ports() {
        let mut d = TorusDiagram::new("bare");
        d.crossings.push(Crossing { id: CrossingId(0), sign: Sign::Pos });
        let r = validate(&d);
        assert_eq!(r.violations.len(), 4);
    }

    #[test]
    fn reversed_edge_is_rejected() {
        let mut d = TorusDiagram::new("bad");
        d.crossings.push(Crossing { id: CrossingId(0), sign: Sign::Pos });
        d.edges.push(Edge {
            id: EdgeId(0),
            from: Endpoint::new(CrossingId(0), Port::OverIn),
            to: Endpoint::new(CrossingId(0), Port::OverOut),
            wrap: WrapVector::ZERO,
        });
        let r = validate(&d);
        assert!(r.violations.iter().any(|v| v.kind() == "wrong port direction"));
    }

    #[test]
    fn duplicate_ids_are_reported() {
        let mut d = e1();
        d.free_loops.push(FreeLoop::new(0, WrapVector::new(0, 1)));
        assert_eq!(validate(&d).violations[0].kind(), "duplicate id");
    }

    #[test]
    fn over_marks_expand_to_crossings() {
        let mut d = TorusDiagram::new("marked");
        let mut a = FreeLoop::new(0, WrapVector::new(1, 0));
        a.over_marks.push(OverMark { other: LoopId(1), translate: WrapVector::ZERO, over: true, sign: Sign::Pos });
        d.free_loops.push(a);
        d.free_loops.push(FreeLoop::new(1, WrapVector::new(0, 1)));
        assert!(validate(&d).is_ok());
        let x = expand_over_marks(&d);
        assert!(validate(&x).is_ok());
        assert_eq!(x.crossings.len(), 1);
        assert_eq!(x.edges.len(), 2);
        assert!(x.free_loops.is_empty());
    }

    #[test]
    fn self_referencing_mark_is_rejected() {
        let mut d = TorusDiagram::new("marked");
        let mut a = FreeLoop::new(0, WrapVector::new(1, 0));
        a.over_marks.push(OverMark { other: LoopId(0), translate: WrapVector::ZERO, over: true, sign: Sign::Pos });
        d.free_loops.push(a);
        assert_eq!(validate(&d).violations[0].kind(), "bad over mark");
    }
}
