use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::lattice_moves::{cover, gauge_shift, rebase, GaugeAssignment};
use super::reidemeister::{apply_move, applicable_sites, MoveSite};
use crate::compound::{MotifClass, Policy};
use crate::direction::DirectionalType;
use crate::error::Result;
use crate::lattice::{sublattice_representatives, Lattice, Matrix2, WrapVector};
use crate::motif::TorusDiagram;
use crate::report::Analysis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    Gauge,
    Rebase,
    Cover,
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::Gauge,
        MoveKind::Rebase,
        MoveKind::Cover,
        MoveKind::R1Plus,
        MoveKind::R1Minus,
        MoveKind::R2Plus,
        MoveKind::R2Minus,
        MoveKind::R3,
    ];

    fn of(site: &MoveSite) -> MoveKind {
        match site {
            MoveSite::R1Plus { .. } => MoveKind::R1Plus,
            MoveSite::R1Minus { .. } => MoveKind::R1Minus,
            MoveSite::R2Plus { .. } => MoveKind::R2Plus,
            MoveSite::R2Minus { .. } => MoveKind::R2Minus,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

/// Size limits that keep random walks cheap to analyze.
#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub policy: Policy,
    /// R1+ and R2+ are only drawn below this crossing count.
    pub max_crossings: usize,
    /// Covers must keep crossings and components under these bounds.
    pub max_cover_crossings: usize,
    pub max_cover_components: usize,
    /// Largest null cluster allowed after a cover.
    pub max_cover_cluster: usize,
    pub max_cover_det: i64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            policy: Policy::LinkingAdjacency,
            max_crossings: 40,
            max_cover_crossings: 48,
            max_cover_components: 24,
            max_cover_cluster: crate::compound::DECOMPOSITION_CAP,
            max_cover_det: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail { step: usize, reason: String },
    /// The invariants could not be computed, so nothing was checked.
    Excluded { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail { step, reason } => write!(f, "fail at step {step}: {reason}"),
            Verdict::Excluded { reason } => write!(f, "excluded: {reason}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WalkOutcome {
    pub seed: u64,
    pub diagram: TorusDiagram,
    pub verdict: Verdict,
    /// One line per applied move.
    pub log: Vec<String>,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Snapshot {
    class: MotifClass,
    subclasses: BTreeMap<String, usize>,
    direction_count: usize,
    directional_type: DirectionalType,
}

fn snapshot(a: &Analysis) -> Option<Snapshot> {
    let mut subclasses = BTreeMap::new();
    for c in &a.compounds {
        *subclasses.entry(c.subclass.clone()).or_insert(0) += 1;
    }
    Some(Snapshot {
        class: a.motif_class,
        subclasses,
        direction_count: a.direction_count()?,
        directional_type: a.directional_type()?,
    })
}

/// Subclass multiset expected after covering by `l`: each compound splits
/// into `|ℤ² / (Lℤ² + S)|` copies, `S` its translation group.
fn covered_subclasses(a: &Analysis, l: &Matrix2) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for c in &a.compounds {
        let joined = Lattice::spanned_by(c.lattice().basis().iter().copied().chain([l.column(0), l.column(1)]));
        let copies = joined.index().expect("contains a full-rank sublattice") as usize;
        *out.entry(c.subclass.clone()).or_insert(0) += copies;
    }
    out
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Matrix2 {
    const GENS: [Matrix2; 5] = [
        Matrix2::new(1, 1, 0, 1),
        Matrix2::new(1, -1, 0, 1),
        Matrix2::new(1, 0, 1, 1),
        Matrix2::new(1, 0, -1, 1),
        Matrix2::new(0, -1, 1, 0),
    ];
    let mut m = Matrix2::IDENTITY;
    for _ in 0..rng.gen_range(1..=2) {
        m = m * *GENS.choose(rng).unwrap();
    }
    m
}

struct Step {
    diagram: TorusDiagram,
    label: String,
    cover: Option<Matrix2>,
}

fn random_step(d: &TorusDiagram, a: &Analysis, rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Option<Step> {
    let crossings = d.crossings.len();
    let components = a.traced.components.len();
    let largest_cluster = a
        .compounds
        .iter()
        .flat_map(|c| c.null_clusters.iter().map(|k| k.components.len()))
        .max()
        .unwrap_or(0);
    let covers: Vec<Matrix2> = (2..=cfg.max_cover_det)
        .filter(|&n| {
            crossings * n as usize <= cfg.max_cover_crossings
                && components * n as usize <= cfg.max_cover_components
                && largest_cluster * n as usize <= cfg.max_cover_cluster
        })
        .flat_map(sublattice_representatives)
        .collect();
    let sites = applicable_sites(d);
    let grow_ok = crossings < cfg.max_crossings;
    let mut kinds: Vec<MoveKind> = vec![MoveKind::Gauge, MoveKind::Rebase];
    if !covers.is_empty() {
        kinds.push(MoveKind::Cover);
    }
    for k in [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3] {
        let growing = matches!(k, MoveKind::R1Plus | MoveKind::R2Plus);
        if (!growing || grow_ok) && sites.iter().any(|s| MoveKind::of(s) == k) {
            kinds.push(k);
        }
    }
    let kind = *kinds.choose(rng)?;
    match kind {
        MoveKind::Gauge => {
            let mut g = GaugeAssignment::new();
            for c in &d.crossings {
                if rng.gen_bool(0.5) {
                    g.insert(c.id, WrapVector::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2)));
                }
            }
            Some(Step { diagram: gauge_shift(d, &g), label: format!("gauge on {} crossings", g.len()), cover: None })
        }
        MoveKind::Rebase => {
            let m = random_unimodular(rng);
            let diagram = rebase(d, &m, false).ok()?;
            Some(Step { diagram, label: format!("rebase {m}"), cover: None })
        }
        MoveKind::Cover => {
            let l = *covers.choose(rng)?;
            let diagram = cover(d, &l).ok()?.diagram;
            Some(Step { diagram, label: format!("cover {l}"), cover: Some(l) })
        }
        _ => {
            let options: Vec<&MoveSite> = sites.iter().filter(|s| MoveKind::of(s) == kind).collect();
            let site = **options.choose(rng)?;
            let diagram = apply_move(d, &site).ok()?;
            Some(Step { diagram, label: format!("move {site}"), cover: None })
        }
    }
}

/// A random walk of `length` equivalence moves, checking after every step
/// that the motif class, subclass multiset, direction count and directional
/// type are unchanged.
pub fn fuzz_walk(d: &TorusDiagram, length: usize, seed: u64) -> Result<WalkOutcome> {
    fuzz_walk_with(d, length, seed, &FuzzConfig::default())
}

pub fn fuzz_walk_with(d: &TorusDiagram, length: usize, seed: u64, cfg: &FuzzConfig) -> Result<WalkOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Analysis::new(d, cfg.policy)?;
    let mut outcome =
        WalkOutcome { seed, diagram: d.clone(), verdict: Verdict::Pass, log: Vec::new(), skipped: 0 };
    let Some(base) = snapshot(&a) else {
        outcome.verdict = Verdict::Excluded { reason: "decomposition-undetermined".into() };
        return Ok(outcome);
    };
    if a.compounds.iter().any(|c| c.ambiguous_decomposition) {
        outcome.verdict = Verdict::Excluded { reason: "ambiguous chain decomposition".into() };
        return Ok(outcome);
    }
    let mut expected = base.subclasses.clone();
    for step in 1..=length {
        let Some(next) = random_step(&outcome.diagram, &a, &mut rng, cfg) else {
            outcome.skipped += 1;
            outcome.log.push(format!("{step}: skipped, no applicable move"));
            continue;
        };
        if let Some(l) = next.cover {
            expected = covered_subclasses(&a, &l);
        }
        outcome.log.push(format!("{step}: {}", next.label));
        outcome.diagram = next.diagram;
        a = Analysis::new(&outcome.diagram, cfg.policy)?;
        let Some(now) = snapshot(&a) else {
            outcome.verdict = Verdict::Excluded { reason: format!("decomposition-undetermined after step {step}") };
            return Ok(outcome);
        };
        let reason = if now.class != base.class {
            Some(format!("class {} became {}", base.class, now.class))
        } else if now.direction_count != base.direction_count {
            Some(format!("direction count {} became {}", base.direction_count, now.direction_count))
        } else if now.directional_type != base.directional_type {
            Some(format!("directional type {} became {}", base.directional_type, now.directional_type))
        } else if now.subclasses != expected {
            Some(format!("subclasses {expected:?} became {:?}", now.subclasses))
        } else {
            None
        };
        if let Some(reason) = reason {
            outcome.verdict = Verdict::Fail { step, reason };
            return Ok(outcome);
        }
        expected = now.subclasses;
    }
    Ok(outcome)
}

/// `walks` independent walks; walk `k` uses seed `seed + k`.
pub fn fuzz_many(d: &TorusDiagram, walks: usize, length: usize, seed: u64, cfg: &FuzzConfig) -> Result<Vec<WalkOutcome>> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(walks.max(1));
    let results: Vec<Result<Vec<WalkOutcome>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..walks)
                        .step_by(threads)
                        .map(|k| fuzz_walk_with(d, length, seed + k as u64, cfg))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("fuzz worker panicked")).collect()
    });
    let mut all = Vec::with_capacity(walks);
    for r in results {
        all.extend(r?);
    }
    all.sort_by_key(|o| o.seed);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::FreeLoop;

    #[test]
    fn empty_walk_passes() {
        let mut d = TorusDiagram::new("E1");
        d.free_loops.push(FreeLoop::new(0, WrapVector::new(1, 0)));
        let o = fuzz_walk(&d, 0, 1).unwrap();
        assert_eq!(o.verdict, Verdict::Pass);
        assert!(o.log.is_empty());
    }

    #[test]
    fn walks_are_reproducible() {
        let mut d = TorusDiagram::new("E2");
        d.free_loops.push(FreeLoop::new(0, WrapVector::new(1, 0)));
        d.free_loops.push(FreeLoop::new(1, WrapVector::new(1, 0)));
        let a = fuzz_walk(&d, 12, 9).unwrap();
        let b = fuzz_walk(&d, 12, 9).unwrap();
        assert_eq!(a.log, b.log);
        assert_eq!(a.diagram, b.diagram);
        assert_eq!(a.verdict, Verdict::Pass, "{:?}", a.log);
    }
}
