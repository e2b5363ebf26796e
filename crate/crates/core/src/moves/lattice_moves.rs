use std::collections::BTreeMap;

use crate::error::{DptError, Result};
use crate::lattice::{Lattice, Matrix2, WrapVector};
use crate::motif::{expand_over_marks, Crossing, CrossingId, Edge, EdgeId, Endpoint, FreeLoop, LoopId, TorusDiagram};

/// Cell reassignment of crossings; unlisted crossings stay put.
pub type GaugeAssignment = BTreeMap<CrossingId, WrapVector>;

/// Moves crossings between lattice cells: `wrap' = wrap + g(head) - g(tail)`.
pub fn gauge_shift(d: &TorusDiagram, g: &GaugeAssignment) -> TorusDiagram {
    let mut out = d.clone();
    let at = |c: CrossingId| g.get(&c).copied().unwrap_or(WrapVector::ZERO);
    for e in &mut out.edges {
        e.wrap = e.wrap + at(e.to.crossing) - at(e.from.crossing);
    }
    out
}

/// Unimodular change of the lattice basis, acting on every wrap.
///
/// A reflection (`det = -1`) mirrors the diagram, which flips every crossing
/// sign; it is only accepted with `allow_reflection`.
pub fn rebase(d: &TorusDiagram, m: &Matrix2, allow_reflection: bool) -> Result<TorusDiagram> {
    match m.det() {
        1 => {}
        -1 if allow_reflection => {}
        -1 => return Err(DptError::OrientationReversing(*m)),
        _ => return Err(DptError::NotUnimodular(*m)),
    }
    let mut out = d.clone();
    for e in &mut out.edges {
        e.wrap = m.apply(e.wrap);
    }
    for l in &mut out.free_loops {
        l.wrap = m.apply(l.wrap);
        for mark in &mut l.over_marks {
            mark.translate = m.apply(mark.translate);
            if m.det() < 0 {
                mark.sign = mark.sign.flip();
            }
        }
    }
    if m.det() < 0 {
        for c in &mut out.crossings {
            c.sign = c.sign.flip();
        }
    }
    Ok(out)
}

/// A finite cover together with where each new piece came from.
#[derive(Clone, Debug)]
pub struct Cover {
    pub diagram: TorusDiagram,
    /// Original crossing and cell of every new crossing, by new id.
    pub crossing_origin: BTreeMap<CrossingId, (CrossingId, WrapVector)>,
    pub edge_origin: BTreeMap<EdgeId, (EdgeId, WrapVector)>,
    pub loop_origin: BTreeMap<LoopId, (LoopId, WrapVector)>,
}

/// The cover associated with the sublattice spanned by the columns of `l`.
pub fn cover(d: &TorusDiagram, l: &Matrix2) -> Result<Cover> {
    if l.det() < 1 {
        return Err(DptError::InvalidCover(*l));
    }
    let d = expand_over_marks(d);
    let lattice = Lattice::spanned_by([l.column(0), l.column(1)]);
    let reps = lattice.coset_representatives().expect("rank-2 sublattice");
    let n = reps.len() as u32;
    let slot: BTreeMap<WrapVector, u32> = reps.iter().enumerate().map(|(k, r)| (*r, k as u32)).collect();
    let crossing_index: BTreeMap<CrossingId, u32> =
        d.crossings.iter().enumerate().map(|(i, c)| (c.id, i as u32)).collect();
    let new_crossing = |c: CrossingId, k: u32| CrossingId(crossing_index[&c] * n + k);
    let lift = |v: WrapVector| l.solve(v).expect("difference lies in the sublattice");

    let mut out = TorusDiagram::new(d.name.clone());
    let mut crossing_origin = BTreeMap::new();
    let mut edge_origin = BTreeMap::new();
    let mut loop_origin = BTreeMap::new();
    for c in &d.crossings {
        for (k, r) in reps.iter().enumerate() {
            let id = new_crossing(c.id, k as u32);
            out.crossings.push(Crossing { id, sign: c.sign });
            crossing_origin.insert(id, (c.id, *r));
        }
    }
    for (i, e) in d.edges.iter().enumerate() {
        for (k, t) in reps.iter().enumerate() {
            let r = lattice.reduce(*t + e.wrap);
            let id = EdgeId(i as u32 * n + k as u32);
            out.edges.push(Edge {
                id,
                from: Endpoint::new(new_crossing(e.from.crossing, k as u32), e.from.port),
                to: Endpoint::new(new_crossing(e.to.crossing, slot[&r]), e.to.port),
                wrap: lift(*t + e.wrap - r),
            });
            edge_origin.insert(id, (e.id, *t));
        }
    }
    let mut next_loop = 0;
    for fl in &d.free_loops {
        let mut done = vec![false; reps.len()];
        for (k, t) in reps.iter().enumerate() {
            if done[k] {
                continue;
            }
            let mut steps = 0;
            let mut cur = *t;
            loop {
                done[slot[&cur] as usize] = true;
                cur = lattice.reduce(cur + fl.wrap);
                steps += 1;
                if cur == *t {
                    break;
                }
            }
            let id = LoopId(next_loop);
            next_loop += 1;
            out.free_loops.push(FreeLoop { id, wrap: lift(steps * fl.wrap), over_marks: Vec::new() });
            loop_origin.insert(id, (fl.id, *t));
        }
    }
    Ok(Cover { diagram: out, crossing_origin, edge_origin, loop_origin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::trace_components;

    fn loop_diagram(w: WrapVector) -> TorusDiagram {
        let mut d = TorusDiagram::new("loop");
        d.free_loops.push(FreeLoop::new(0, w));
        d
    }

    #[test]
    fn left_right_copy_is_one_component() {
        let c = cover(&loop_diagram(WrapVector::new(1, 0)), &Matrix2::diag(2, 1)).unwrap();
        let comps = trace_components(&c.diagram).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].homology, WrapVector::new(1, 0));
    }

    #[test]
    fn top_down_copy_is_two_components() {
        let c = cover(&loop_diagram(WrapVector::new(1, 0)), &Matrix2::diag(1, 2)).unwrap();
        let comps = trace_components(&c.diagram).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.homology == WrapVector::new(1, 0)));
    }

    #[test]
    fn rebase_rejects_bad_matrices() {
        let d = loop_diagram(WrapVector::new(1, 0));
        assert!(matches!(rebase(&d, &Matrix2::diag(2, 1), false), Err(DptError::NotUnimodular(_))));
        assert!(matches!(rebase(&d, &Matrix2::diag(1, -1), false), Err(DptError::OrientationReversing(_))));
        assert!(rebase(&d, &Matrix2::diag(1, -1), true).is_ok());
        assert!(matches!(cover(&d, &Matrix2::diag(1, -1)), Err(DptError::InvalidCover(_))));
    }
}
