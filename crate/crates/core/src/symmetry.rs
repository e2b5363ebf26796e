//! Hidden translation symmetry of a null cluster.
//!
//! A cover of a motif has more components than the motif, and its copies can
//! be regrouped into chains that cut across the original components. To keep
//! chain decompositions independent of such choices, a cluster is first
//! folded by every translation that permutes its components, and decomposed
//! in that smallest quotient.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::compound::InterlinkEdge;
use crate::lattice::{Lattice, Matrix2, WrapVector};

/// `(c, a) -> (sigma[c], a + delta[c])` on lift copies.
#[derive(Clone, Debug)]
struct Symmetry {
    sigma: Vec<usize>,
    delta: Vec<WrapVector>,
}

/// Neighbours of each node: `(j, o, w)` means copy `(i, a)` meets `(j, a - o)`
/// with linking weight `w`.
type Adjacency = Vec<BTreeSet<(usize, WrapVector, i64)>>;

fn adjacency(n: usize, edges: &[InterlinkEdge]) -> Adjacency {
    let mut adj: Adjacency = vec![BTreeSet::new(); n];
    for e in edges {
        adj[e.i].insert((e.j, e.offset, e.weight));
        adj[e.j].insert((e.i, -e.offset, e.weight));
    }
    adj
}

fn extend(adj: &Adjacency, sigma: &mut Vec<Option<usize>>, delta: &mut Vec<WrapVector>, out: &mut Vec<Symmetry>) {
    let n = adj.len();
    // First constraint whose target is still unassigned.
    let pending = (0..n).filter(|&i| sigma[i].is_some()).find_map(|i| {
        adj[i].iter().find(|(j, _, _)| sigma[*j].is_none()).map(|&(j, o, w)| (i, j, o, w))
    });
    let Some((i, j, o, w)) = pending else {
        if sigma.iter().all(Option::is_some) {
            let s: Vec<usize> = sigma.iter().map(|x| x.unwrap()).collect();
            let mut seen = vec![false; n];
            if s.iter().all(|&k| !std::mem::replace(&mut seen[k], true)) && preserves(adj, &s, delta) {
                out.push(Symmetry { sigma: s, delta: delta.clone() });
            }
        }
        return;
    };
    let si = sigma[i].unwrap();
    for &(k, o2, w2) in &adj[si] {
        if w2 != w || sigma.contains(&Some(k)) {
            continue;
        }
        sigma[j] = Some(k);
        delta[j] = o + delta[i] - o2;
        extend(adj, sigma, delta, out);
        sigma[j] = None;
    }
}

fn preserves(adj: &Adjacency, sigma: &[usize], delta: &[WrapVector]) -> bool {
    (0..adj.len()).all(|i| {
        adj[i].iter().all(|&(j, o, w)| adj[sigma[i]].contains(&(sigma[j], o + delta[i] - delta[j], w)))
    })
}

fn compose(a: &Symmetry, b: &Symmetry) -> Symmetry {
    // Apply `b` first, then `a`.
    let n = a.sigma.len();
    let sigma = (0..n).map(|c| a.sigma[b.sigma[c]]).collect();
    let delta = (0..n).map(|c| b.delta[c] + a.delta[b.sigma[c]]).collect();
    Symmetry { sigma, delta }
}

/// Order of the permutation and the translation after that many steps, if it
/// is the same for every component.
fn period(s: &Symmetry) -> Option<(i64, WrapVector)> {
    let n = s.sigma.len();
    let mut power = s.clone();
    for k in 1..=n as i64 {
        if power.sigma.iter().enumerate().all(|(c, &x)| x == c) {
            let t = power.delta[0];
            return power.delta.iter().all(|&d| d == t).then_some((k, t));
        }
        // A proper power that fixes a component is not a translation.
        if power.sigma.iter().enumerate().any(|(c, &x)| x == c) {
            return None;
        }
        power = compose(s, &power);
    }
    None
}

/// A cluster folded by its translation symmetries.
pub(crate) struct Quotient {
    /// Orbit representative index of each node.
    pub orbit: Vec<usize>,
    pub size: usize,
    pub edges: Vec<InterlinkEdge>,
}

/// Folds the cluster on nodes `0..n`; `None` when it has no symmetry beyond
/// lattice translations.
pub(crate) fn fold(n: usize, edges: &[InterlinkEdge]) -> Option<Quotient> {
    if n < 2 {
        return None;
    }
    let adj = adjacency(n, edges);
    let mut found = Vec::new();
    for a in 1..n {
        if adj[a].len() != adj[0].len() {
            continue;
        }
        let mut sigma = vec![None; n];
        let mut delta = vec![WrapVector::ZERO; n];
        sigma[0] = Some(a);
        extend(&adj, &mut sigma, &mut delta, &mut found);
    }
    // Keep the free ones, with their fractional translation `t / k`.
    let mut group: Vec<(Symmetry, i64, WrapVector)> = Vec::new();
    for s in found {
        if let Some((k, t)) = period(&s) {
            group.push((s, k, t));
        }
    }
    if group.is_empty() {
        return None;
    }
    let order = group.len() as i64 + 1;
    if group.iter().any(|(_, k, _)| order % k != 0) {
        return None;
    }
    // Translations scaled by the group order, so everything stays integral.
    let scaled = |k: i64, t: WrapVector| (order / k) * t;
    let mut gens = vec![WrapVector::new(order, 0), WrapVector::new(0, order)];
    gens.extend(group.iter().map(|(_, k, t)| scaled(*k, *t)));
    let coarse = Lattice::spanned_by(gens);
    let fine = Lattice::spanned_by([WrapVector::new(order, 0), WrapVector::new(0, order)]);
    if coarse.index()? * order != fine.index()? {
        return None;
    }
    let basis = Matrix2::from_columns(coarse.basis()[0], coarse.basis()[1]);

    // Orbit representatives and the scaled position of each node relative to its representative.
    let mut orbit = vec![usize::MAX; n];
    let mut shift = vec![WrapVector::ZERO; n];
    for r in 0..n {
        if orbit[r] != usize::MAX {
            continue;
        }
        orbit[r] = r;
        for (s, k, t) in &group {
            let c = s.sigma[r];
            if orbit[c] != usize::MAX {
                if orbit[c] != r {
                    return None;
                }
                continue;
            }
            orbit[c] = r;
            shift[c] = scaled(*k, *t) - order * s.delta[r];
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&c| orbit[c] == c).collect();
    let index: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &r)| (r, k)).collect();

    let mut folded: BTreeMap<(usize, usize, WrapVector), i64> = BTreeMap::new();
    for e in edges {
        let scaled_offset = shift[e.i] - shift[e.j] + order * e.offset;
        let o = basis.solve(scaled_offset)?;
        let (mut i, mut j, mut o) = (index[&orbit[e.i]], index[&orbit[e.j]], o);
        if i > j {
            std::mem::swap(&mut i, &mut j);
            o = -o;
        }
        if i == j {
            o = o.min(-o);
        }
        folded.insert((i, j, o), e.weight);
    }
    let edges = folded.into_iter().map(|((i, j, offset), weight)| InterlinkEdge { i, j, offset, weight }).collect();
    Some(Quotient { orbit: (0..n).map(|c| index[&orbit[c]]).collect(), size: reps.len(), edges })
}
