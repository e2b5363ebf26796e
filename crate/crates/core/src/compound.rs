//! Interlinked compounds, translation rank, class and subclass.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DptError, Result};
use crate::lattice::{Lattice, WrapVector};
use crate::motif::{crossing_offsets, linking_profile, TorusDiagram, TracedDiagram};

/// Largest null cluster core searched for a chain decomposition.
pub const DECOMPOSITION_CAP: usize = 8;

/// Partition-search work budget; exceeding it marks the cluster undetermined.
const SEARCH_BUDGET: usize = 400_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// Components are linked when some lift offset carries a nonzero signed over-count.
    #[default]
    LinkingAdjacency,
    /// Components are linked whenever they cross.
    CrossingAdjacency,
}

impl Policy {
    pub fn as_str(self) -> &'static str {
        match self {
            Policy::LinkingAdjacency => "linking-adjacency",
            Policy::CrossingAdjacency => "crossing-adjacency",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Edge `(i, j, offset)`: the lift of `i` at translate `a` meets the lift of
/// `j` at translate `a - offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InterlinkEdge {
    pub i: usize,
    pub j: usize,
    pub offset: WrapVector,
    pub weight: i64,
}

impl InterlinkEdge {
    pub fn reversed(self) -> Self {
        InterlinkEdge { i: self.j, j: self.i, offset: -self.offset, weight: self.weight }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlinkGraph {
    pub policy: Policy,
    pub nodes: Vec<usize>,
    pub edges: Vec<InterlinkEdge>,
    /// Homology of each node, indexed like `nodes`.
    pub self_loops: Vec<WrapVector>,
}

pub fn interlink_graph(t: &TracedDiagram, policy: Policy) -> InterlinkGraph {
    let nodes: Vec<usize> = (0..t.components.len()).collect();
    let self_loops = t.components.iter().map(|c| c.homology).collect();
    let mut edges = Vec::new();
    match policy {
        Policy::CrossingAdjacency => {
            for l in crossing_offsets(t) {
                if l.over == l.under && pair_lattice_reduces_to_zero(t, l.over, l.offset) {
                    continue;
                }
                edges.push(InterlinkEdge { i: l.over, j: l.under, offset: l.offset, weight: l.sign.value() });
            }
        }
        Policy::LinkingAdjacency => {
            let profile = linking_profile(t);
            let mut lattices: HashMap<(usize, usize), Lattice> = HashMap::new();
            let mut combined: BTreeMap<(usize, usize, WrapVector), i64> = BTreeMap::new();
            for (&(over, under, d), &v) in &profile {
                let (i, j, d) = if over <= under { (over, under, d) } else { (under, over, -d) };
                let lat = lattices.entry((i, j)).or_insert_with(|| crate::motif::pair_lattice(t, i, j));
                let mut d = lat.reduce(d);
                if i == j {
                    d = d.min(lat.reduce(-d));
                }
                *combined.entry((i, j, d)).or_insert(0) += v;
            }
            // A component crossing its own copy at the same translate is writhe, not linking.
            for ((i, j, d), v) in combined {
                if v != 0 && !(i == j && d.is_zero()) {
                    edges.push(InterlinkEdge { i, j, offset: d, weight: v });
                }
            }
        }
    }
    InterlinkGraph { policy, nodes, edges, self_loops }
}

fn pair_lattice_reduces_to_zero(t: &TracedDiagram, c: usize, offset: WrapVector) -> bool {
    crate::motif::pair_lattice(t, c, c).reduce(offset).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompoundClass {
    Null,
    Ribbon,
    Cover,
}

impl CompoundClass {
    pub fn from_rank(rank: usize) -> Self {
        match rank {
            0 => CompoundClass::Null,
            1 => CompoundClass::Ribbon,
            _ => CompoundClass::Cover,
        }
    }

    fn strength(self) -> u8 {
        match self {
            CompoundClass::Null => 0,
            CompoundClass::Ribbon => 1,
            CompoundClass::Cover => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CompoundClass::Null => "null-homotopic",
            CompoundClass::Ribbon => "ribbon",
            CompoundClass::Cover => "cover",
        }
    }
}

impl fmt::Display for CompoundClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl PartialOrd for CompoundClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CompoundClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.strength().cmp(&other.strength())
    }
}

/// Cover is stronger than ribbon, which is stronger than null-homotopic.
pub fn compare_class(c1: CompoundClass, c2: CompoundClass) -> Ordering {
    c1.cmp(&c2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainGroup {
    pub components: Vec<usize>,
    pub direction: WrapVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Decomposition {
    /// Rank below 2; nothing to decompose.
    NotApplicable,
    /// Full-polycatenane pieces and chains covering the core.
    Parts { full: Vec<Vec<usize>>, chains: Vec<ChainGroup>, ambiguous: bool },
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullCluster {
    pub components: Vec<usize>,
    pub rank: usize,
    pub generators: Vec<WrapVector>,
    /// Members attached to the rest at a single translate; they behave as isolated knots.
    pub hanging: Vec<usize>,
    pub core: Vec<usize>,
    pub decomposition: Decomposition,
}

impl NullCluster {
    pub fn is_chain(&self) -> bool {
        self.rank == 1 || matches!(&self.decomposition, Decomposition::Parts { chains, .. } if !chains.is_empty())
    }

    pub fn is_full(&self) -> bool {
        matches!(&self.decomposition, Decomposition::Parts { full, .. } if !full.is_empty())
    }

    pub fn has_isolated(&self) -> bool {
        self.rank == 0 || !self.hanging.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubclassFlags {
    pub essential: bool,
    pub chain: bool,
    pub full: bool,
    pub isolated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compound {
    pub id: usize,
    pub components: Vec<usize>,
    pub edges: Vec<InterlinkEdge>,
    pub homologies: Vec<WrapVector>,
    pub rank: usize,
    pub generators: Vec<WrapVector>,
    pub class: CompoundClass,
    /// Primitive direction of a ribbon compound.
    pub direction: Option<WrapVector>,
    pub null_clusters: Vec<NullCluster>,
    pub flags: SubclassFlags,
    pub subclass: String,
    pub undetermined: bool,
    pub ambiguous_decomposition: bool,
}

impl Compound {
    pub fn lattice(&self) -> Lattice {
        Lattice::spanned_by(self.generators.iter().copied())
    }

    fn homology_of(&self, c: usize) -> WrapVector {
        let k = self.components.iter().position(|&x| x == c).expect("member component");
        self.homologies[k]
    }
}

/// Rank data of a connected subgraph: lattice spanned by cycle nets and the
/// given homology vectors. Returns `None` if the nodes are not connected by
/// the edges among them.
fn span_lattice(nodes: &[usize], edges: &[InterlinkEdge], homology: impl Fn(usize) -> WrapVector) -> Option<Lattice> {
    if nodes.is_empty() {
        return Some(Lattice::zero());
    }
    let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    let mut inside = Vec::new();
    for (k, e) in edges.iter().enumerate() {
        if let (Some(&a), Some(&b)) = (pos.get(&e.i), pos.get(&e.j)) {
            inside.push(k);
            adj[a].push(k);
            if a != b {
                adj[b].push(k);
            }
        }
    }
    let mut potential: Vec<Option<WrapVector>> = vec![None; nodes.len()];
    potential[0] = Some(WrapVector::ZERO);
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        let pa = potential[a].unwrap();
        for &k in &adj[a] {
            let e = edges[k];
            let (b, pb) = if pos[&e.i] == a { (pos[&e.j], pa - e.offset) } else { (pos[&e.i], pa + e.offset) };
            if potential[b].is_none() {
                potential[b] = Some(pb);
                queue.push_back(b);
            }
        }
    }
    if potential.iter().any(|p| p.is_none()) {
        return None;
    }
    let mut gens: Vec<WrapVector> = nodes.iter().map(|&n| homology(n)).collect();
    for &k in &inside {
        let e = edges[k];
        let (a, b) = (pos[&e.i], pos[&e.j]);
        gens.push(potential[a].unwrap() - e.offset - potential[b].unwrap());
    }
    Some(Lattice::spanned_by(gens))
}

/// Connected pieces of `nodes` under `edges`, each sorted, ordered by minimum.
fn connected_pieces(nodes: &[usize], edges: &[InterlinkEdge]) -> Vec<Vec<usize>> {
    let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in edges {
        if let (Some(&a), Some(&b)) = (pos.get(&e.i), pos.get(&e.j)) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &n) in nodes.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(n);
    }
    let mut out: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Rank and Hermite basis of the compound's translation subgroup.
pub fn translation_rank(compound: &Compound) -> (usize, Vec<WrapVector>) {
    let lat = span_lattice(&compound.components, &compound.edges, |c| compound.homology_of(c))
        .expect("compound is connected");
    (lat.rank(), lat.basis().to_vec())
}

pub fn compound_class(compound: &Compound) -> CompoundClass {
    CompoundClass::from_rank(compound.rank)
}

/// Members of a rank >= 1 cluster that hang off a single node: removing that
/// node detaches them, and together with it they span no translation.
fn hanging_members(nodes: &[usize], edges: &[InterlinkEdge]) -> Vec<usize> {
    let mut hanging = BTreeSet::new();
    for &w in nodes {
        let rest: Vec<usize> = nodes.iter().copied().filter(|&n| n != w).collect();
        for piece in connected_pieces(&rest, edges) {
            let mut with_w = piece.clone();
            with_w.push(w);
            let sub: Vec<InterlinkEdge> = edges.iter().copied().filter(|e| !(e.i == w && e.j == w)).collect();
            let lat = span_lattice(&with_w, &sub, |_| WrapVector::ZERO).expect("piece attaches to w");
            if lat.rank() == 0 {
                hanging.extend(piece);
            }
        }
    }
    hanging.into_iter().collect()
}

/// Per-subset connectivity and rank of a core, indexed by bitmask.
struct SubsetTable {
    n: usize,
    /// `Some(lattice)` when the subset is connected.
    lattice: Vec<Option<Lattice>>,
    neighbors: Vec<u32>,
    chains_by_low: Vec<Vec<u32>>,
}

impl SubsetTable {
    fn new(core: &[usize], edges: &[InterlinkEdge]) -> Self {
        let n = core.len();
        let mut neighbors = vec![0u32; n];
        for e in edges {
            let (Some(a), Some(b)) = (core.iter().position(|&c| c == e.i), core.iter().position(|&c| c == e.j)) else {
                continue;
            };
            if a != b {
                neighbors[a] |= 1 << b;
                neighbors[b] |= 1 << a;
            }
        }
        let mut lattice = vec![None; 1 << n];
        let mut chains_by_low = vec![Vec::new(); n];
        for mask in 1u32..(1u32 << n) {
            let members: Vec<usize> = (0..n).filter(|&b| mask & (1 << b) != 0).map(|b| core[b]).collect();
            let lat = span_lattice(&members, edges, |_| WrapVector::ZERO);
            if lat.as_ref().is_some_and(|l| l.rank() == 1) {
                chains_by_low[mask.trailing_zeros() as usize].push(mask);
            }
            lattice[mask as usize] = lat;
        }
        SubsetTable { n, lattice, neighbors, chains_by_low }
    }

    fn direction(&self, mask: u32) -> WrapVector {
        self.lattice[mask as usize].as_ref().and_then(|l| l.direction()).expect("chain mask")
    }

    fn neighborhood(&self, mask: u32) -> u32 {
        (0..self.n).filter(|&b| mask & (1 << b) != 0).fold(0, |acc, b| acc | self.neighbors[b])
    }

    /// Connected pieces of a subset.
    fn pieces(&self, mut mask: u32) -> Vec<u32> {
        let mut out = Vec::new();
        while mask != 0 {
            let mut piece = 1u32 << mask.trailing_zeros();
            loop {
                let grown = (piece | self.neighborhood(piece)) & mask;
                if grown == piece {
                    break;
                }
                piece = grown;
            }
            out.push(piece);
            mask &= !piece;
        }
        out
    }
}

struct ChainSearch<'a> {
    table: &'a SubsetTable,
    work: usize,
    best_len: usize,
    found: Vec<Vec<u32>>,
}

impl ChainSearch<'_> {
    /// Partitions of `mask` into chains where no two chains of equal direction touch.
    fn run(&mut self, mask: u32, current: &mut Vec<u32>) {
        if self.work > SEARCH_BUDGET || current.len() > self.best_len {
            return;
        }
        if mask == 0 {
            if current.len() < self.best_len {
                self.best_len = current.len();
                self.found.clear();
            }
            self.found.push(current.clone());
            return;
        }
        let low = mask.trailing_zeros() as usize;
        for &sub in &self.table.chains_by_low[low] {
            self.work += 1;
            if sub & !mask != 0 {
                continue;
            }
            let dir = self.table.direction(sub);
            let near = self.table.neighborhood(sub);
            let clash = current.iter().any(|&g| near & g != 0 && self.table.direction(g) == dir);
            if clash {
                continue;
            }
            current.push(sub);
            self.run(mask & !sub, current);
            current.pop();
        }
    }
}

fn subsets_with(free: &[usize], k: usize, start: usize, acc: u32, out: &mut Vec<u32>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    for i in start..free.len() {
        if free.len() - i < k {
            break;
        }
        subsets_with(free, k - 1, i + 1, acc | (1 << free[i]), out);
    }
}

/// Splits a rank-2 core into a smallest full part (pieces of rank 2) and
/// chains, with chains of equal direction never linked to each other. The
/// split is computed on the core folded by its translation symmetries, so a
/// cover decomposes the same way as the motif it covers.
fn decompose(core: &[usize], edges: &[InterlinkEdge]) -> Decomposition {
    let pos: HashMap<usize, usize> = core.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let local: Vec<InterlinkEdge> = edges
        .iter()
        .filter_map(|e| Some(InterlinkEdge { i: *pos.get(&e.i)?, j: *pos.get(&e.j)?, ..*e }))
        .collect();
    let Some(q) = crate::symmetry::fold(core.len(), &local) else {
        return decompose_primitive(core, edges);
    };
    let nodes: Vec<usize> = (0..q.size).collect();
    let Decomposition::Parts { full, chains, ambiguous } = decompose_primitive(&nodes, &q.edges) else {
        return decompose_primitive(core, edges);
    };
    let lift = |group: &[usize]| -> Vec<Vec<usize>> {
        let members: Vec<usize> =
            core.iter().enumerate().filter(|(k, _)| group.contains(&q.orbit[*k])).map(|(_, &c)| c).collect();
        connected_pieces(&members, edges)
    };
    let full: Vec<Vec<usize>> = full.iter().flat_map(|g| lift(g)).collect();
    let mut lifted = Vec::new();
    for g in &chains {
        for piece in lift(&g.components) {
            match span_lattice(&piece, edges, |_| WrapVector::ZERO).and_then(|l| l.direction().filter(|_| l.rank() == 1)) {
                Some(direction) => lifted.push(ChainGroup { components: piece, direction }),
                None => return decompose_primitive(core, edges),
            }
        }
    }
    lifted.sort_by(|a, b| (a.direction, &a.components).cmp(&(b.direction, &b.components)));
    Decomposition::Parts { full, chains: lifted, ambiguous }
}

fn decompose_primitive(core: &[usize], edges: &[InterlinkEdge]) -> Decomposition {
    let n = core.len();
    let everything = || Decomposition::Parts { full: vec![core.to_vec()], chains: Vec::new(), ambiguous: false };
    if n < 2 {
        return everything();
    }
    // A member linked with two independent translates of itself lies in no chain.
    let self_full = |c: usize| {
        Lattice::spanned_by(edges.iter().filter(|e| e.i == c && e.j == c).map(|e| e.offset)).rank() == 2
    };
    if n > DECOMPOSITION_CAP {
        return if core.iter().all(|&c| self_full(c)) { everything() } else { Decomposition::Undetermined };
    }
    let table = SubsetTable::new(core, edges);
    let all: u32 = ((1u64 << n) - 1) as u32;
    let in_some_chain = table.chains_by_low.iter().flatten().fold(0u32, |acc, &m| acc | m);
    let forced = all & !in_some_chain;
    let free: Vec<usize> = (0..n).filter(|&b| in_some_chain & (1 << b) != 0).collect();
    let mut work = 0usize;

    for k in 0..=free.len() {
        let mut fulls = Vec::new();
        subsets_with(&free, k, 0, forced, &mut fulls);
        let mut solutions: Vec<(usize, Vec<WrapVector>, u32, Vec<u32>)> = Vec::new();
        for fset in fulls {
            work += 1;
            let pieces = table.pieces(fset);
            if !pieces.iter().all(|&p| table.lattice[p as usize].as_ref().is_some_and(|l| l.rank() == 2)) {
                continue;
            }
            let mut search = ChainSearch { table: &table, work: 0, best_len: usize::MAX, found: Vec::new() };
            search.run(all & !fset, &mut Vec::new());
            work += search.work;
            if work > SEARCH_BUDGET {
                return Decomposition::Undetermined;
            }
            for chains in search.found {
                let mut dirs: Vec<WrapVector> = chains.iter().map(|&m| table.direction(m)).collect();
                dirs.sort();
                solutions.push((chains.len() + pieces.len(), dirs, fset, chains));
            }
        }
        if solutions.is_empty() {
            continue;
        }
        solutions.sort();
        let best_key = (solutions[0].0, solutions[0].1.clone());
        let ambiguous = solutions.iter().filter(|s| (s.0, &s.1) == (best_key.0, &best_key.1)).count() > 1
            || solutions.iter().any(|s| s.0 == best_key.0 && s.1 != best_key.1);
        let (_, _, fset, chains) = &solutions[0];
        let members = |m: u32| -> Vec<usize> { (0..n).filter(|&b| m & (1 << b) != 0).map(|b| core[b]).collect() };
        let full: Vec<Vec<usize>> = table.pieces(*fset).into_iter().map(members).collect();
        let mut chains: Vec<ChainGroup> =
            chains.iter().map(|&m| ChainGroup { components: members(m), direction: table.direction(m) }).collect();
        chains.sort_by(|a, b| (a.direction, &a.components).cmp(&(b.direction, &b.components)));
        return Decomposition::Parts { full, chains, ambiguous };
    }
    everything()
}

/// Null-homotopic members of the compound grouped into linked clusters.
pub fn null_clusters(compound: &Compound) -> Vec<NullCluster> {
    let null: Vec<usize> = compound
        .components
        .iter()
        .zip(&compound.homologies)
        .filter(|(_, h)| h.is_zero())
        .map(|(&c, _)| c)
        .collect();
    connected_pieces(&null, &compound.edges)
        .into_iter()
        .map(|members| {
            let inner: Vec<InterlinkEdge> = compound
                .edges
                .iter()
                .copied()
                .filter(|e| members.contains(&e.i) && members.contains(&e.j))
                .collect();
            let lat = span_lattice(&members, &inner, |_| WrapVector::ZERO).expect("piece is connected");
            let (hanging, core) = if lat.rank() == 0 {
                (Vec::new(), members.clone())
            } else {
                let hanging = hanging_members(&members, &inner);
                let core: Vec<usize> = members.iter().copied().filter(|c| !hanging.contains(c)).collect();
                (hanging, core)
            };
            let decomposition = if lat.rank() == 2 {
                let core_edges: Vec<InterlinkEdge> =
                    inner.iter().copied().filter(|e| core.contains(&e.i) && core.contains(&e.j)).collect();
                decompose(&core, &core_edges)
            } else {
                Decomposition::NotApplicable
            };
            NullCluster {
                components: members,
                rank: lat.rank(),
                generators: lat.basis().to_vec(),
                hanging,
                core,
                decomposition,
            }
        })
        .collect()
}

pub fn subclass_flags(compound: &Compound) -> SubclassFlags {
    SubclassFlags {
        essential: compound.homologies.iter().any(|h| !h.is_zero()),
        chain: compound.null_clusters.iter().any(NullCluster::is_chain),
        full: compound.null_clusters.iter().any(NullCluster::is_full),
        isolated: compound.null_clusters.iter().any(NullCluster::has_isolated),
    }
}

pub fn subclass_name(class: CompoundClass, f: SubclassFlags) -> &'static str {
    use CompoundClass::*;
    match class {
        Null => "null-homotopic compound",
        Ribbon => match (f.essential, f.chain, f.isolated) {
            (true, false, false) => "essential ribbon compound",
            (false, true, false) => "chain-link ribbon compound",
            (true, true, false) => "chain-essential ribbon compound",
            (true, false, true) => "null-essential ribbon compound",
            (false, true, true) => "null-chain ribbon compound",
            (true, true, true) => "mixed ribbon compound",
            (false, false, _) => "ribbon compound",
        },
        Cover => match (f.essential, f.full, f.chain, f.isolated) {
            (false, false, _, false) => "chain-polycatenane compound",
            (false, false, _, true) => "null-chain-polycatenane compound",
            (false, true, false, false) => "full-polycatenane compound",
            (false, true, false, true) => "null-full-polycatenane compound",
            (false, true, true, false) => "chain-full-polycatenane compound",
            (false, true, true, true) => "null-chain-full-polycatenane compound",
            (true, false, false, false) => "essential cover compound",
            (true, false, false, true) => "null-essential cover compound",
            (true, false, true, false) => "chain-essential cover compound",
            (true, false, true, true) => "null-chain-essential cover compound",
            (true, true, false, false) => "essential-full-polycatenane cover compound",
            (true, true, false, true) => "null-essential-full-polycatenane cover compound",
            (true, true, true, false) => "chain-essential-full-polycatenane cover compound",
            (true, true, true, true) => "mixed cover compound",
        },
    }
}

pub fn subclass(compound: &Compound) -> String {
    let base = subclass_name(compound.class, subclass_flags(compound));
    if compound.undetermined {
        format!("{base} (undetermined)")
    } else {
        base.to_string()
    }
}

fn build_compound(id: usize, members: Vec<usize>, t: &TracedDiagram, graph: &InterlinkGraph) -> Compound {
    let edges: Vec<InterlinkEdge> =
        graph.edges.iter().copied().filter(|e| members.binary_search(&e.i).is_ok()).collect();
    let homologies = members.iter().map(|&c| t.components[c].homology).collect();
    let mut c = Compound {
        id,
        components: members,
        edges,
        homologies,
        rank: 0,
        generators: Vec::new(),
        class: CompoundClass::Null,
        direction: None,
        null_clusters: Vec::new(),
        flags: SubclassFlags::default(),
        subclass: String::new(),
        undetermined: false,
        ambiguous_decomposition: false,
    };
    let (rank, generators) = translation_rank(&c);
    c.rank = rank;
    c.generators = generators;
    c.class = compound_class(&c);
    c.direction = if rank == 1 { c.lattice().direction() } else { None };
    c.null_clusters = null_clusters(&c);
    c.flags = subclass_flags(&c);
    c.undetermined = c.null_clusters.iter().any(|n| n.decomposition == Decomposition::Undetermined);
    c.ambiguous_decomposition = c
        .null_clusters
        .iter()
        .any(|n| matches!(n.decomposition, Decomposition::Parts { ambiguous: true, .. }));
    c.subclass = subclass(&c);
    c
}

/// Connected pieces of the interlink graph, ordered by smallest member.
pub fn compounds_of(t: &TracedDiagram, graph: &InterlinkGraph) -> Vec<Compound> {
    connected_pieces(&graph.nodes, &graph.edges)
        .into_iter()
        .enumerate()
        .map(|(id, members)| build_compound(id, members, t, graph))
        .collect()
}

pub fn compounds(d: &TorusDiagram, policy: Policy) -> Result<Vec<Compound>> {
    let t = TracedDiagram::new(d)?;
    let g = interlink_graph(&t, policy);
    Ok(compounds_of(&t, &g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MotifClass {
    Cover,
    NullCover,
    RibbonCover,
    NullRibbonCover,
    Ribbon,
    NullRibbon,
    NullHomotopic,
}

impl MotifClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MotifClass::Cover => "cover",
            MotifClass::NullCover => "null-cover",
            MotifClass::RibbonCover => "ribbon-cover",
            MotifClass::NullRibbonCover => "null-ribbon-cover",
            MotifClass::Ribbon => "ribbon",
            MotifClass::NullRibbon => "null-ribbon",
            MotifClass::NullHomotopic => "null-homotopic",
        }
    }
}

impl fmt::Display for MotifClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn motif_class_of(compounds: &[Compound]) -> Result<MotifClass> {
    let has = |k: CompoundClass| compounds.iter().any(|c| c.class == k);
    let (c, r, n) = (has(CompoundClass::Cover), has(CompoundClass::Ribbon), has(CompoundClass::Null));
    Ok(match (c, r, n) {
        (true, false, false) => MotifClass::Cover,
        (true, false, true) => MotifClass::NullCover,
        (true, true, false) => MotifClass::RibbonCover,
        (true, true, true) => MotifClass::NullRibbonCover,
        (false, true, false) => MotifClass::Ribbon,
        (false, true, true) => MotifClass::NullRibbon,
        (false, false, true) => MotifClass::NullHomotopic,
        (false, false, false) => return Err(DptError::EmptyMotif),
    })
}

pub fn motif_class(d: &TorusDiagram, policy: Policy) -> Result<MotifClass> {
    motif_class_of(&compounds(d, policy)?)
}
