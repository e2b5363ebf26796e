use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::model::*;
use super::validate::{expand_over_marks, validate};
use crate::error::{DptError, Result};
use crate::lattice::{Lattice, WrapVector};

/// Port-to-edge lookup for a structurally valid diagram.
#[derive(Clone, Debug)]
pub struct DiagramIndex {
    crossing_pos: HashMap<CrossingId, usize>,
    edge_pos: HashMap<EdgeId, usize>,
    /// Edge index bound at each port, indexed by crossing position then `Port::slot`.
    ports: Vec<[usize; 4]>,
}

impl DiagramIndex {
    /// Assumes `validate(d)` is ok.
    pub fn new(d: &TorusDiagram) -> Self {
        let crossing_pos: HashMap<_, _> = d.crossings.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        let edge_pos = d.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        let mut ports = vec![[usize::MAX; 4]; d.crossings.len()];
        for (i, e) in d.edges.iter().enumerate() {
            ports[crossing_pos[&e.from.crossing]][e.from.port.slot()] = i;
            ports[crossing_pos[&e.to.crossing]][e.to.port.slot()] = i;
        }
        DiagramIndex { crossing_pos, edge_pos, ports }
    }

    pub fn crossing_pos(&self, id: CrossingId) -> usize {
        self.crossing_pos[&id]
    }

    pub fn edge_pos(&self, id: EdgeId) -> Option<usize> {
        self.edge_pos.get(&id).copied()
    }

    /// Index of the edge bound at `(crossing, port)`.
    pub fn edge_at(&self, crossing: CrossingId, port: Port) -> usize {
        self.ports[self.crossing_pos[&crossing]][port.slot()]
    }

    /// The edge that continues the strand after edge `e` passes through its head crossing.
    pub fn successor(&self, d: &TorusDiagram, e: usize) -> usize {
        let head = d.edges[e].to;
        self.edge_at(head.crossing, head.port.through())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cycle {
    Edges(Vec<EdgeId>),
    Loop(LoopId),
}

/// A closed oriented strand of the motif.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: usize,
    pub cycle: Cycle,
    pub homology: WrapVector,
}

impl Component {
    pub fn is_essential(&self) -> bool {
        !self.homology.is_zero()
    }
}

/// One passage of a strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub component: usize,
    /// Lift position of the crossing copy the strand passes through,
    /// relative to the component's base point.
    pub position: WrapVector,
}

/// A validated diagram with its components traced.
#[derive(Clone, Debug)]
pub struct TracedDiagram {
    /// The diagram with over marks expanded into crossings.
    pub diagram: TorusDiagram,
    pub index: DiagramIndex,
    pub components: Vec<Component>,
    pub edge_component: Vec<usize>,
    /// Lift position of each edge's tail, by edge index.
    pub tail_position: Vec<WrapVector>,
}

impl TracedDiagram {
    pub fn new(d: &TorusDiagram) -> Result<Self> {
        let report = validate(d);
        if !report.is_ok() {
            return Err(DptError::InvalidDiagram(report.violations));
        }
        let diagram = expand_over_marks(d);
        let index = DiagramIndex::new(&diagram);
        let n = diagram.edges.len();
        let mut edge_component = vec![usize::MAX; n];
        let mut tail_position = vec![WrapVector::ZERO; n];
        let mut components = Vec::new();

        // Base point of each component: the tail of its lowest-id edge.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| diagram.edges[i].id);
        for &start in &order {
            if edge_component[start] != usize::MAX {
                continue;
            }
            let cid = components.len();
            let mut cycle = Vec::new();
            let mut pos = WrapVector::ZERO;
            let mut e = start;
            loop {
                if edge_component[e] != usize::MAX {
                    // only reachable with a broken port bijection
                    return Err(DptError::InvalidDiagram(Vec::new()));
                }
                edge_component[e] = cid;
                tail_position[e] = pos;
                cycle.push(diagram.edges[e].id);
                pos += diagram.edges[e].wrap;
                e = index.successor(&diagram, e);
                if e == start {
                    break;
                }
            }
            components.push(Component { id: cid, cycle: Cycle::Edges(cycle), homology: pos });
        }
        let mut loops: Vec<&FreeLoop> = diagram.free_loops.iter().collect();
        loops.sort_by_key(|l| l.id);
        for l in loops {
            let cid = components.len();
            components.push(Component { id: cid, cycle: Cycle::Loop(l.id), homology: l.wrap });
        }
        Ok(TracedDiagram { diagram, index, components, edge_component, tail_position })
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossings.len()
    }

    /// The passage of the strand leaving crossing `c` through `level`.
    pub fn passage(&self, c: CrossingId, level: Level) -> Passage {
        let e = self.index.edge_at(c, Port::new(level, false));
        Passage { component: self.edge_component[e], position: self.tail_position[e] }
    }

    /// Edges of a component in cycle order (empty for free loops).
    pub fn component_edges(&self, cid: usize) -> Vec<usize> {
        match &self.components[cid].cycle {
            Cycle::Edges(ids) => ids.iter().map(|id| self.index.edge_pos(*id).unwrap()).collect(),
            Cycle::Loop(_) => Vec::new(),
        }
    }

    /// Wrap vectors along a component in traversal order.
    pub fn wrap_sequence(&self, cid: usize) -> Vec<WrapVector> {
        match &self.components[cid].cycle {
            Cycle::Edges(_) => self.component_edges(cid).into_iter().map(|e| self.diagram.edges[e].wrap).collect(),
            Cycle::Loop(_) => vec![self.components[cid].homology],
        }
    }
}

pub fn trace_components(d: &TorusDiagram) -> Result<Vec<Component>> {
    Ok(TracedDiagram::new(d)?.components)
}

/// Sum of the wraps along the component's cycle.
pub fn component_homology(d: &TorusDiagram, component: &Component) -> WrapVector {
    match &component.cycle {
        Cycle::Loop(id) => d.free_loop(*id).map(|l| l.wrap).unwrap_or_default(),
        Cycle::Edges(ids) => ids.iter().filter_map(|id| d.edge(*id)).fold(WrapVector::ZERO, |acc, e| acc + e.wrap),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingOffsetLabel {
    pub crossing: CrossingId,
    pub over: usize,
    pub under: usize,
    /// Lift position of the under passage minus that of the over passage.
    pub offset: WrapVector,
    pub sign: Sign,
}

pub fn crossing_offsets(t: &TracedDiagram) -> Vec<CrossingOffsetLabel> {
    let mut out: Vec<_> = t
        .diagram
        .crossings
        .iter()
        .map(|c| {
            let over = t.passage(c.id, Level::Over);
            let under = t.passage(c.id, Level::Under);
            CrossingOffsetLabel {
                crossing: c.id,
                over: over.component,
                under: under.component,
                offset: under.position - over.position,
                sign: c.sign,
            }
        })
        .collect();
    out.sort_by_key(|l| l.crossing);
    out
}

/// The subgroup by which offsets between components `i` and `j` are ambiguous.
pub fn pair_lattice(t: &TracedDiagram, i: usize, j: usize) -> Lattice {
    Lattice::spanned_by([t.components[i].homology, t.components[j].homology])
}

/// Key of a linking-profile entry: ordered pair (over, under) and the
/// canonical offset modulo the pair's homology lattice.
pub type ProfileKey = (usize, usize, WrapVector);

/// Signed count of crossings per (over component, under component, offset),
/// with offsets reduced modulo the span of the two homology classes. Zero
/// entries are dropped.
pub fn linking_profile(t: &TracedDiagram) -> BTreeMap<ProfileKey, i64> {
    let mut lattices: HashMap<(usize, usize), Lattice> = HashMap::new();
    let mut profile: BTreeMap<ProfileKey, i64> = BTreeMap::new();
    for label in crossing_offsets(t) {
        let lat = lattices
            .entry((label.over.min(label.under), label.over.max(label.under)))
            .or_insert_with(|| pair_lattice(t, label.over, label.under));
        let key = (label.over, label.under, lat.reduce(label.offset));
        *profile.entry(key).or_insert(0) += label.sign.value();
    }
    profile.retain(|_, v| *v != 0);
    profile
}

/// Reverses the orientation of one component. Crossing signs flip where
/// exactly one strand is reversed.
pub fn reverse_component(d: &TorusDiagram, component: usize) -> Result<TorusDiagram> {
    let t = TracedDiagram::new(d)?;
    let mut out = t.diagram.clone();
    match &t.components[component].cycle {
        Cycle::Loop(id) => {
            for l in &mut out.free_loops {
                if l.id == *id {
                    l.wrap = -l.wrap;
                }
            }
        }
        Cycle::Edges(_) => {
            for &e in &t.component_edges(component) {
                let edge = &mut out.edges[e];
                let (from, to) = (edge.from, edge.to);
                edge.from = Endpoint::new(to.crossing, to.port.through());
                edge.to = Endpoint::new(from.crossing, from.port.through());
                edge.wrap = -edge.wrap;
            }
            for c in &mut out.crossings {
                let over = t.passage(c.id, Level::Over).component == component;
                let under = t.passage(c.id, Level::Under).component == component;
                if over != under {
                    c.sign = c.sign.flip();
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> WrapVector {
        WrapVector::new(a, b)
    }

    fn edge(id: u32, from: (u32, Port), to: (u32, Port), wrap: WrapVector) -> Edge {
        Edge {
            id: EdgeId(id),
            from: Endpoint::new(CrossingId(from.0), from.1),
            to: Endpoint::new(CrossingId(to.0), to.1),
            wrap,
        }
    }

    /// Two free loops (1,0) and (0,1) meeting in one crossing, written with edges.
    fn crossing_pair() -> TorusDiagram {
        let mut d = TorusDiagram::new("pair");
        d.crossings.push(Crossing { id: CrossingId(0), sign: Sign::Pos });
        d.edges.push(edge(0, (0, Port::OverOut), (0, Port::OverIn), w(1, 0)));
        d.edges.push(edge(1, (0, Port::UnderOut), (0, Port::UnderIn), w(0, 1)));
        d
    }

    #[test]
    fn free_loop_component() {
        let mut d = TorusDiagram::new("E1");
        d.free_loops.push(FreeLoop::new(0, w(1, 0)));
        let cs = trace_components(&d).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].homology, w(1, 0));
        assert_eq!(component_homology(&d, &cs[0]), w(1, 0));
    }

    #[test]
    fn edged_components_partition_edges() {
        let d = crossing_pair();
        let t = TracedDiagram::new(&d).unwrap();
        assert_eq!(t.components.len(), 2);
        assert_eq!(t.components[0].homology, w(1, 0));
        assert_eq!(t.components[1].homology, w(0, 1));
        let labels = crossing_offsets(&t);
        assert_eq!(labels.len(), 1);
        assert_eq!((labels[0].over, labels[0].under), (0, 1));
    }

    #[test]
    fn reversal_negates_homology_and_flips_mixed_signs() {
        let d = crossing_pair();
        let r = reverse_component(&d, 0).unwrap();
        let t = TracedDiagram::new(&r).unwrap();
        assert!(t.components.iter().any(|c| c.homology == w(-1, 0)));
        assert_eq!(r.crossings[0].sign, Sign::Neg);
    }

    #[test]
    fn invalid_diagram_cannot_be_traced() {
        let mut d = crossing_pair();
        d.edges.pop();
        assert!(matches!(TracedDiagram::new(&d), Err(DptError::InvalidDiagram(_))));
    }
}
