use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::lattice::WrapVector;
use crate::motif::{expand_over_marks, CrossingId, DiagramIndex, Port, TorusDiagram};

/// Whether two diagrams agree up to renaming and a gauge shift.
///
/// Crossings are matched with their ports and signs; the gauge absorbs the
/// cell of each crossing. Free loops compare as a multiset of wraps.
pub fn isomorphic(a: &TorusDiagram, b: &TorusDiagram) -> bool {
    let (a, b) = (expand_over_marks(a), expand_over_marks(b));
    if a.crossings.len() != b.crossings.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    let loops = |d: &TorusDiagram| {
        let mut w: Vec<WrapVector> = d.free_loops.iter().map(|l| l.wrap).collect();
        w.sort();
        w
    };
    if loops(&a) != loops(&b) {
        return false;
    }
    let (ia, ib) = (DiagramIndex::new(&a), DiagramIndex::new(&b));
    let mut map: HashMap<CrossingId, (CrossingId, WrapVector)> = HashMap::new();
    let mut used: HashMap<CrossingId, ()> = HashMap::new();
    let mut order: Vec<CrossingId> = a.crossings.iter().map(|c| c.id).collect();
    order.sort();
    for seed in order {
        if map.contains_key(&seed) {
            continue;
        }
        let sign = a.crossing(seed).unwrap().sign;
        let found = b.crossings.iter().filter(|c| c.sign == sign && !used.contains_key(&c.id)).find_map(|c| {
            let piece = match_piece(&a, &b, &ia, &ib, seed, c.id)?;
            piece.values().all(|(t, _)| !used.contains_key(t)).then_some(piece)
        });
        let Some(piece) = found else { return false };
        for (k, v) in piece {
            used.insert(v.0, ());
            map.insert(k, v);
        }
    }
    true
}

/// Extends `seed -> target` over the connected piece of `a` containing it.
fn match_piece(
    a: &TorusDiagram,
    b: &TorusDiagram,
    ia: &DiagramIndex,
    ib: &DiagramIndex,
    seed: CrossingId,
    target: CrossingId,
) -> Option<BTreeMap<CrossingId, (CrossingId, WrapVector)>> {
    let mut m: BTreeMap<CrossingId, (CrossingId, WrapVector)> = BTreeMap::new();
    let mut back: HashMap<CrossingId, CrossingId> = HashMap::new();
    m.insert(seed, (target, WrapVector::ZERO));
    back.insert(target, seed);
    let mut queue = VecDeque::from([seed]);
    while let Some(c) = queue.pop_front() {
        let (tc, g) = m[&c];
        if a.crossing(c)?.sign != b.crossing(tc)?.sign {
            return None;
        }
        for port in Port::ALL {
            let ea = &a.edges[ia.edge_at(c, port)];
            let eb = &b.edges[ib.edge_at(tc, port)];
            let (na, pa, nb, pb) = if port.is_in() {
                (ea.from.crossing, ea.from.port, eb.from.crossing, eb.from.port)
            } else {
                (ea.to.crossing, ea.to.port, eb.to.crossing, eb.to.port)
            };
            if pa != pb {
                return None;
            }
            // wrap_b = wrap_a + g(head) - g(tail)
            let gn = if port.is_in() { g - eb.wrap + ea.wrap } else { g + eb.wrap - ea.wrap };
            match m.get(&na) {
                Some(&(t, h)) => {
                    if t != nb || h != gn {
                        return None;
                    }
                }
                None => {
                    if back.contains_key(&nb) {
                        return None;
                    }
                    m.insert(na, (nb, gn));
                    back.insert(nb, na);
                    queue.push_back(na);
                }
            }
        }
    }
    Some(m)
}
