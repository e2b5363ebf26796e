use std::collections::HashMap;

use crate::lattice::WrapVector;
use crate::motif::{clockwise_next, CrossingId, DiagramIndex, Port, TorusDiagram};

/// An edge traversed with (`forward`) or against its orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

/// A boundary walk of the diagram graph, with the region on its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    /// Sum of dart wraps; zero for a disk face.
    pub net: WrapVector,
}

impl Face {
    pub fn is_disk(&self) -> bool {
        self.net.is_zero()
    }

    /// Lift position of each dart's starting crossing, relative to the first.
    pub fn positions(&self, d: &TorusDiagram) -> Vec<WrapVector> {
        let mut pos = WrapVector::ZERO;
        self.darts
            .iter()
            .map(|dart| {
                let here = pos;
                pos += dart_wrap(d, *dart);
                here
            })
            .collect()
    }
}

pub fn dart_wrap(d: &TorusDiagram, dart: Dart) -> WrapVector {
    let w = d.edges[dart.edge].wrap;
    if dart.forward {
        w
    } else {
        -w
    }
}

/// Crossing a dart starts from, with the port it leaves through.
pub fn dart_start(d: &TorusDiagram, dart: Dart) -> (CrossingId, Port) {
    let e = &d.edges[dart.edge];
    if dart.forward {
        (e.from.crossing, e.from.port)
    } else {
        (e.to.crossing, e.to.port)
    }
}

pub fn dart_end(d: &TorusDiagram, dart: Dart) -> (CrossingId, Port) {
    dart_start(d, Dart { edge: dart.edge, forward: !dart.forward })
}

/// Traces every face of an expanded diagram; free loops take no part.
pub fn faces(d: &TorusDiagram, index: &DiagramIndex) -> Vec<Face> {
    let signs: HashMap<CrossingId, _> = d.crossings.iter().map(|c| (c.id, c.sign)).collect();
    let mut seen: HashMap<Dart, ()> = HashMap::new();
    let mut out = Vec::new();
    for e in 0..d.edges.len() {
        for forward in [true, false] {
            let start = Dart { edge: e, forward };
            if seen.contains_key(&start) {
                continue;
            }
            let mut darts = Vec::new();
            let mut net = WrapVector::ZERO;
            let mut dart = start;
            loop {
                seen.insert(dart, ());
                darts.push(dart);
                net += dart_wrap(d, dart);
                let (c, arrival) = dart_end(d, dart);
                let q = clockwise_next(signs[&c], arrival);
                dart = Dart { edge: index.edge_at(c, q), forward: !q.is_in() };
                if dart == start {
                    break;
                }
            }
            out.push(Face { darts, net });
        }
    }
    out
}

/// Face containing each dart: `(face index, position in the walk)`.
pub fn dart_faces(faces: &[Face]) -> HashMap<Dart, (usize, usize)> {
    let mut m = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for (k, dart) in f.darts.iter().enumerate() {
            m.insert(*dart, (i, k));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build, Curve, Height};

    fn euler(d: &TorusDiagram) -> i64 {
        let index = DiagramIndex::new(d);
        d.crossings.len() as i64 - d.edges.len() as i64 + faces(d, &index).len() as i64
    }

    #[test]
    fn trefoil_faces_live_in_a_sphere() {
        let d = build("trefoil", &[Curve::trefoil((0.5, 0.5), 0.1, 90)]);
        let index = DiagramIndex::new(&d);
        let fs = faces(&d, &index);
        assert_eq!(fs.len(), 5);
        assert!(fs.iter().all(Face::is_disk));
        assert_eq!(euler(&d), 2);
    }

    #[test]
    fn crossing_lines_fill_the_torus() {
        let d = build(
            "grid",
            &[
                Curve::line((0.03, 0.47), crate::lattice::WrapVector::new(1, 0), 4),
                Curve::line((0.57, 0.02), crate::lattice::WrapVector::new(0, 1), 4).with_height(Height::flat(1.0)),
            ],
        );
        assert_eq!(euler(&d), 0);
        let index = DiagramIndex::new(&d);
        let fs = faces(&d, &index);
        assert_eq!(fs.len(), 1);
        assert!(fs[0].is_disk());
    }
}
