//! Acceptance run: one pass/fail line per criterion.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use dpt_core::catalog;
use dpt_core::compound::{compounds, interlink_graph, Policy};
use dpt_core::direction::{AxisMotif, Direction};
use dpt_core::format;
use dpt_core::lattice::{sublattice_representatives, Lattice, Matrix2, WrapVector};
use dpt_core::motif::{crossing_offsets, Cycle, TracedDiagram, TorusDiagram};
use dpt_core::moves::{self, FuzzConfig, GaugeAssignment, MoveSite, Side, Strand};
use dpt_core::motif::{CrossingId, EdgeId, LoopId, Sign};
use dpt_core::report::{invariant_report, table_differences, InvariantReport, TableInvariant};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn w(a: i64, b: i64) -> WrapVector {
    WrapVector::new(a, b)
}

fn report(name: &str) -> InvariantReport {
    invariant_report(&catalog::get(name).unwrap(), Policy::LinkingAdjacency).unwrap()
}

// 1. Worked examples --------------------------------------------------------

/// Expected axis-motif: torus links as written `(m·a, m·b)`, trivial knots,
/// noncontractible loops.
struct Axis(&'static [(i64, i64)], usize, usize);

fn axis_matches(a: &AxisMotif, want: &Axis) -> bool {
    let links: BTreeSet<(i64, i64)> =
        a.torus_links.iter().map(|t| (t.multiplicity as i64 * t.a, t.multiplicity as i64 * t.b)).collect();
    links == want.0.iter().copied().collect() && a.trivial_knots == want.1 && a.noncontractible_loops.len() == want.2
}

fn worked_examples() -> Check {
    use Direction::{Infinity as Inf, Zero};
    let v = |a, b| Direction::vector(w(a, b));
    let cases: Vec<(&str, Vec<Direction>, Option<Axis>)> = vec![
        ("ic-a", vec![Zero, v(1, 0)], Some(Axis(&[(3, 0)], 2, 0))),
        ("ic-b", vec![v(0, 1)], Some(Axis(&[(0, 6)], 0, 0))),
        ("ic-c", vec![Zero, v(2, 1)], Some(Axis(&[(4, 2)], 3, 0))),
        ("ic-d", vec![v(1, 0), v(1, 2), v(-1, 2)], None),
        ("ic-e", vec![Zero, v(1, 0), v(0, 1)], None),
        ("ic-f", vec![Inf], None),
        ("ic-g", vec![Inf], None),
        ("ic-h", vec![Inf, Zero, v(1, 0), v(0, 1)], Some(Axis(&[(2, 0), (0, 2)], 4, 1))),
    ];
    let mut slowest = Duration::ZERO;
    for (name, dirs, axis) in cases {
        let start = Instant::now();
        let r = report(name);
        slowest = slowest.max(start.elapsed());
        let want: BTreeSet<Direction> = dirs.into_iter().collect();
        if r.direction_set() != Some(want.clone()) {
            return Err(format!("{name}: direction {:?}, expected {want:?}", r.direction_set()));
        }
        if let Some(axis) = axis {
            let got = r.axis_motif.as_ref().ok_or(format!("{name}: no axis-motif"))?;
            if !axis_matches(got, &axis) {
                return Err(format!("{name}: axis-motif {got}"));
            }
        }
    }
    if slowest >= Duration::from_secs(1) {
        return Err(format!("slowest report took {slowest:?}"));
    }
    Ok(format!("8 motifs, slowest {slowest:.0?}"))
}

// 2. Subclass taxonomy ------------------------------------------------------

fn subclass_taxonomy() -> Check {
    let expected = [
        ("dp-a", "null-homotopic"),
        ("dp-b", "essential ribbon"),
        ("dp-c", "chain-link ribbon"),
        ("dp-d", "chain-essential ribbon"),
        ("dp-e", "null-essential ribbon"),
        ("dp-f", "null-chain ribbon"),
        ("dp-g", "mixed ribbon"),
        ("dp-h", "chain-polycatenane"),
        ("dp-i", "null-chain-polycatenane"),
        ("dp-j", "full-polycatenane"),
        ("dp-k", "full-polycatenane"),
        ("dp-l", "null-full-polycatenane"),
        ("dp-m", "chain-full-polycatenane"),
        ("dp-n", "null-chain-full-polycatenane"),
        ("dp-o", "essential cover"),
        ("dp-p", "essential cover"),
        ("dp-q", "essential cover"),
        ("dp-r", "null-essential cover"),
        ("dp-s", "chain-essential cover"),
        ("dp-t", "null-chain-essential cover"),
        ("dp-u", "essential-full-polycatenane cover"),
        ("dp-v", "essential-full-polycatenane cover"),
        ("dp-w", "null-essential-full-polycatenane cover"),
        ("dp-x", "chain-essential-full-polycatenane cover"),
        ("dp-y", "mixed cover"),
    ];
    for (name, sub) in expected {
        let want: BTreeSet<String> = [format!("{sub} compound")].into();
        let got = report(name).subclass_set();
        if got != want {
            return Err(format!("{name}: {got:?}, expected {want:?}"));
        }
    }
    Ok(format!("{} motifs match", expected.len()))
}

// 3. Invariance fuzzing -----------------------------------------------------

fn invariance_fuzzing() -> Check {
    let start = Instant::now();
    let cfg = FuzzConfig::default();
    let mut walks = 0;
    let mut excluded = 0;
    for e in catalog::entries() {
        for o in moves::fuzz_many(&e.diagram(), 100, 20, 7, &cfg).map_err(|err| format!("{}: {err}", e.name))? {
            walks += 1;
            match o.verdict {
                moves::Verdict::Pass => {}
                moves::Verdict::Excluded { .. } => excluded += 1,
                moves::Verdict::Fail { .. } => return Err(format!("{} seed {}: {}", e.name, o.seed, o.verdict)),
            }
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(300) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!(
        "{} motifs, {walks} walks, 0 failures, {excluded} excluded, {:.1}s",
        catalog::entries().len(),
        took.as_secs_f64()
    ))
}

// 4. Rank oracle -------------------------------------------------------------

/// Whether `v` is an integer combination of `h1` and `h2`, by search.
fn in_span(v: WrapVector, h1: WrapVector, h2: WrapVector) -> bool {
    (-12..=12).any(|s| (-12..=12).any(|t| s * h1 + t * h2 == v))
}

fn rank_of(vs: &[WrapVector]) -> usize {
    let nonzero: Vec<_> = vs.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        0
    } else if nonzero.iter().any(|a| nonzero.iter().any(|b| a.cross(**b) != 0)) {
        2
    } else {
        1
    }
}

/// Lift links `(i, j, off)`: copy `(i, a)` touches copy `(j, a + off)`.
fn oracle_links(t: &TracedDiagram, policy: Policy) -> Vec<(usize, usize, WrapVector)> {
    let h = |c: usize| t.components[c].homology;
    let labels = crossing_offsets(t);
    match policy {
        Policy::CrossingAdjacency => labels.iter().map(|l| (l.over, l.under, l.offset)).collect(),
        Policy::LinkingAdjacency => {
            let mut buckets: Vec<(usize, usize, WrapVector, i64)> = Vec::new();
            for l in &labels {
                let (i, j, off) = if l.over <= l.under { (l.over, l.under, l.offset) } else { (l.under, l.over, -l.offset) };
                let same = |b: &(usize, usize, WrapVector, i64)| {
                    b.0 == i
                        && b.1 == j
                        && (in_span(off - b.2, h(i), h(j)) || (i == j && in_span(off + b.2, h(i), h(j))))
                };
                match buckets.iter_mut().find(|b| same(b)) {
                    Some(b) => b.3 += l.sign.value(),
                    None => buckets.push((i, j, off, l.sign.value())),
                }
            }
            buckets
                .into_iter()
                .filter(|&(i, j, off, s)| s != 0 && !(i == j && in_span(off, h(i), h(j))))
                .map(|(i, j, off, _)| (i, j, off))
                .collect()
        }
    }
}

/// Components reached from copy `(c0, 0)` inside the 5x5 block of cells, and
/// the cells at which `c0` itself is reached.
fn lift_block(t: &TracedDiagram, links: &[(usize, usize, WrapVector)], c0: usize) -> (BTreeSet<usize>, Vec<WrapVector>) {
    const K: i64 = 2;
    let inside = |a: WrapVector| a.du.abs() <= K && a.dv.abs() <= K;
    let mut seen: HashSet<(usize, WrapVector)> = HashSet::new();
    let mut queue = VecDeque::from([(c0, WrapVector::ZERO)]);
    seen.insert((c0, WrapVector::ZERO));
    while let Some((c, a)) = queue.pop_front() {
        let h = t.components[c].homology;
        let mut next = vec![(c, a + h), (c, a - h)];
        for &(i, j, off) in links {
            if i == c {
                next.push((j, a + off));
            }
            if j == c {
                next.push((i, a - off));
            }
        }
        for n in next {
            if inside(n.1) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let reached = seen.iter().map(|&(c, _)| c).collect();
    let cells = seen.iter().filter(|&&(c, _)| c == c0).map(|&(_, a)| a).collect();
    (reached, cells)
}

fn rank_oracle() -> Check {
    let mut checked = 0;
    for e in catalog::entries() {
        let d = e.diagram();
        let t = TracedDiagram::new(&d).unwrap();
        for policy in [Policy::LinkingAdjacency, Policy::CrossingAdjacency] {
            let links = oracle_links(&t, policy);
            for c in compounds(&d, policy).unwrap() {
                let (reached, cells) = lift_block(&t, &links, c.components[0]);
                let members: BTreeSet<usize> = c.components.iter().copied().collect();
                if reached != members {
                    return Err(format!("{} ({policy}): compound {:?}, oracle {:?}", e.name, members, reached));
                }
                if rank_of(&cells) != c.rank {
                    return Err(format!("{} ({policy}): rank {}, oracle {}", e.name, c.rank, rank_of(&cells)));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} compounds agree under both policies"))
}

// 5. Cover counting ----------------------------------------------------------

fn index_of(l: &Matrix2, extra: &[WrapVector]) -> i64 {
    let mut gens = vec![l.column(0), l.column(1)];
    gens.extend_from_slice(extra);
    Lattice::spanned_by(gens).index().expect("full rank")
}

/// Connected pieces of the interlink graph, as component-index lists.
fn interlink_pieces(t: &TracedDiagram, policy: Policy) -> Vec<usize> {
    let g = interlink_graph(t, policy);
    let n = t.components.len();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(r: &mut [usize], x: usize) -> usize {
        if r[x] != x {
            r[x] = find(r, r[x]);
        }
        r[x]
    }
    for e in &g.edges {
        let (a, b) = (find(&mut root, e.i), find(&mut root, e.j));
        root[a] = b;
    }
    (0..n).map(|c| find(&mut root, c)).collect()
}

fn component_of_origin(t: &TracedDiagram) -> (BTreeMap<EdgeId, usize>, BTreeMap<LoopId, usize>) {
    let mut edges = BTreeMap::new();
    let mut loops = BTreeMap::new();
    for c in &t.components {
        match &c.cycle {
            Cycle::Edges(es) => es.iter().for_each(|e| {
                edges.insert(*e, c.id);
            }),
            Cycle::Loop(l) => {
                loops.insert(*l, c.id);
            }
        }
    }
    (edges, loops)
}

fn cover_counts(d: &TorusDiagram, l: &Matrix2, policy: Policy) -> std::result::Result<(), String> {
    let t = TracedDiagram::new(d).unwrap();
    let comps = compounds(d, policy).unwrap();
    let cov = moves::cover(d, l).map_err(|e| e.to_string())?;
    let ct = TracedDiagram::new(&cov.diagram).unwrap();
    let (edge_comp, loop_comp) = component_of_origin(&t);
    let origin: Vec<usize> = ct
        .components
        .iter()
        .map(|c| match &c.cycle {
            Cycle::Edges(es) => edge_comp[&cov.edge_origin[&es[0]].0],
            Cycle::Loop(lp) => loop_comp[&cov.loop_origin[lp].0],
        })
        .collect();
    for c in &t.components {
        let copies = origin.iter().filter(|&&o| o == c.id).count() as i64;
        let want = index_of(l, &[c.homology]);
        if copies != want {
            return Err(format!("component {}: {copies} copies, index {want}", c.id));
        }
    }
    let pieces = interlink_pieces(&ct, policy);
    for comp in &comps {
        let copies: BTreeSet<usize> =
            (0..ct.components.len()).filter(|&k| comp.components.contains(&origin[k])).map(|k| pieces[k]).collect();
        let want = index_of(l, &comp.generators);
        if copies.len() as i64 != want {
            return Err(format!("compound {}: {} copies, index {want}", comp.id, copies.len()));
        }
    }
    Ok(())
}

fn cover_counting() -> Check {
    let e1 = catalog::get("E1").unwrap();
    let count = |l: Matrix2| TracedDiagram::new(&moves::cover(&e1, &l).unwrap().diagram).unwrap().components.len();
    let (left_right, top_down) = (count(Matrix2::diag(2, 1)), count(Matrix2::diag(1, 2)));
    if (left_right, top_down) != (1, 2) {
        return Err(format!("E1 covers: left-right {left_right}, top-down {top_down}"));
    }
    let mut covers = 0;
    for e in catalog::entries() {
        let d = e.diagram();
        for det in 1..=6 {
            for l in sublattice_representatives(det) {
                for policy in [Policy::LinkingAdjacency, Policy::CrossingAdjacency] {
                    cover_counts(&d, &l, policy).map_err(|m| format!("{} under {l} ({policy}): {m}", e.name))?;
                }
                covers += 1;
            }
        }
    }
    Ok(format!("{covers} covers match the index formula; E1 left-right 1, top-down 2"))
}

// 6. Table distinctions ------------------------------------------------------

fn table_distinctions() -> Check {
    use TableInvariant::*;
    // (a, b, named invariants, whether the bullet says "only").
    let bullets: &[(u32, u32, &[TableInvariant], bool)] = &[
        (3, 1, &[Class], true),
        (3, 2, &[Class], true),
        (4, 5, &[DirectionCount, DirectionalType, Class], false),
        (4, 6, &[DirectionCount, DirectionalType, Class], false),
        (7, 8, &[DirectionCount, DirectionalType, Class], false),
        (11, 9, &[DirectionalType, Subclasses], false),
        (11, 10, &[DirectionalType, Subclasses], false),
        (12, 13, &[DirectionalType, Subclasses], false),
        (13, 14, &[Class], true),
        (15, 13, &[DirectionalType, Class], false),
        (15, 14, &[DirectionalType, Class], false),
        (16, 17, &[DirectionCount, DirectionalType, Subclasses], false),
        (18, 19, &[DirectionCount, DirectionalType, Class, Subclasses], false),
        (18, 20, &[DirectionCount, DirectionalType, Class, Subclasses], false),
        (19, 20, &[Subclasses], true),
        (1, 2, &[], true),
        (5, 6, &[], true),
        (9, 10, &[], true),
    ];
    for &(a, b, named, only) in bullets {
        let (ra, rb) = (report(&format!("table-{a}")), report(&format!("table-{b}")));
        let diff = table_differences(&ra, &rb);
        let named: BTreeSet<TableInvariant> = named.iter().copied().collect();
        let ok = if only {
            diff == named
        } else {
            diff.is_superset(&named) && !diff.contains(&Crossings) && !diff.contains(&Components)
        };
        if !ok {
            return Err(format!("motifs {a} and {b}: differ in {diff:?}, expected {named:?}"));
        }
    }
    Ok(format!("{} pairs", bullets.len()))
}

// 7. Round trips ---------------------------------------------------------------

fn catalog_diagram() -> impl Strategy<Value = TorusDiagram> {
    (0..catalog::entries().len()).prop_map(|k| catalog::entries()[k].diagram())
}

fn gauge_for(d: &TorusDiagram, shifts: &[(i64, i64)]) -> GaugeAssignment {
    d.crossings.iter().zip(shifts.iter().cycle()).map(|(c, &(u, v))| (c.id, w(u, v))).collect()
}

fn unimodular() -> impl Strategy<Value = Matrix2> {
    const GENS: [Matrix2; 4] =
        [Matrix2::new(1, 1, 0, 1), Matrix2::new(1, 0, 1, 1), Matrix2::new(0, -1, 1, 0), Matrix2::new(1, -1, 0, 1)];
    prop::collection::vec(0..4usize, 0..5).prop_map(|ks| ks.into_iter().fold(Matrix2::new(1, 0, 0, 1), |m, k| m * GENS[k]))
}

fn strand_of(d: &TorusDiagram, k: usize) -> Strand {
    let n = d.edges.len() + d.free_loops.len();
    let k = k % n;
    if k < d.edges.len() {
        Strand::Edge(d.edges[k].id)
    } else {
        Strand::Loop(d.free_loops[k - d.edges.len()].id)
    }
}

fn side(b: bool) -> Side {
    if b {
        Side::Left
    } else {
        Side::Right
    }
}

/// 1000 cases on a fresh runner; returns how many ran.
fn run_prop<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>,
) -> std::result::Result<usize, String> {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    let ran = std::cell::Cell::new(0);
    TestRunner::new(config)
        .run(&strategy, |v| {
            ran.set(ran.get() + 1);
            test(v)
        })
        .map_err(|e| e.to_string())?;
    Ok(ran.get())
}

fn round_trips() -> Check {
    let mut ran = Vec::new();
    let shifts = prop::collection::vec((-3i64..=3, -3i64..=3), 1..6);

    ran.push(run_prop((catalog_diagram(), shifts.clone(), unimodular()), |(d, s, m)| {
        let d = moves::rebase(&moves::gauge_shift(&d, &gauge_for(&d, &s)), &m, false).unwrap();
        let text = format::serialize(&d);
        let back = format::parse(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&back, &d.clone().sorted());
        prop_assert_eq!(format::serialize(&back), text);
        Ok(())
    })
    .map_err(|e| format!("parse/serialize: {e}"))?);

    ran.push(run_prop((catalog_diagram(), shifts), |(d, s)| {
        let g = gauge_for(&d, &s);
        let inverse: GaugeAssignment = g.iter().map(|(c, v)| (*c, -*v)).collect();
        let back = moves::gauge_shift(&moves::gauge_shift(&d, &g), &inverse);
        prop_assert_eq!(back.sorted(), d.sorted());
        Ok(())
    })
    .map_err(|e| format!("gauge inverse: {e}"))?);

    ran.push(run_prop((catalog_diagram(), unimodular()), |(d, m)| {
        let inv = m.unimodular_inverse().unwrap();
        let back = moves::rebase(&moves::rebase(&d, &m, false).unwrap(), &inv, false).unwrap();
        prop_assert_eq!(back.sorted(), d.sorted());
        Ok(())
    })
    .map_err(|e| format!("rebase inverse: {e}"))?);

    ran.push(run_prop((catalog_diagram(), any::<usize>(), any::<bool>(), any::<bool>()), |(d, k, left, pos)| {
        let site = MoveSite::R1Plus { strand: strand_of(&d, k), side: side(left), sign: if pos { Sign::Pos } else { Sign::Neg } };
        let c = CrossingId(d.next_crossing_id());
        let kinked = moves::apply_move(&d, &site).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let back = moves::apply_move(&kinked, &MoveSite::R1Minus { crossing: c }).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(moves::isomorphic(&back, &d));
        Ok(())
    })
    .map_err(|e| format!("R1 pair: {e}"))?);

    let applied = std::cell::Cell::new(0);
    ran.push(run_prop((catalog_diagram(), any::<usize>()), |(d, k)| {
        let sites: Vec<MoveSite> =
            moves::applicable_sites(&d).into_iter().filter(|s| matches!(s, MoveSite::R2Plus { .. })).collect();
        if sites.is_empty() {
            return Ok(());
        }
        let site = sites[k % sites.len()];
        let c0 = d.next_crossing_id();
        let pushed = moves::apply_move(&d, &site).map_err(|e| TestCaseError::fail(format!("{site}: {e}")))?;
        applied.set(applied.get() + 1);
        let undo = MoveSite::R2Minus { crossings: [CrossingId(c0), CrossingId(c0 + 1)] };
        let back = moves::apply_move(&pushed, &undo).map_err(|e| TestCaseError::fail(format!("{site}: {e}")))?;
        prop_assert!(moves::isomorphic(&back, &d), "{}", site);
        Ok(())
    })
    .map_err(|e| format!("R2 pair: {e}"))?);

    if ran.iter().any(|&n| n < 1000) {
        return Err(format!("cases run per property: {ran:?}"));
    }
    Ok(format!("5 properties x 1000 cases, {} with an R2 site", applied.get()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("worked examples", worked_examples),
        ("subclass taxonomy", subclass_taxonomy),
        ("invariance fuzzing", invariance_fuzzing),
        ("rank oracle", rank_oracle),
        ("cover counting", cover_counting),
        ("table distinctions", table_distinctions),
        ("round trips", round_trips),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
