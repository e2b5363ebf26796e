//! Directional elements, directions, directional type and the axis-motif.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compound::{Compound, Decomposition};
use crate::error::{DptError, Result};
use crate::lattice::{Matrix2, WrapVector};
use crate::motif::TracedDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Direction {
    Zero,
    Vector { a: i64, b: i64 },
    Infinity,
}

impl Direction {
    /// Sign-normalized vector direction; the zero vector maps to `Zero`.
    pub fn vector(v: WrapVector) -> Self {
        if v.is_zero() {
            return Direction::Zero;
        }
        let v = v.sign_normalized();
        Direction::Vector { a: v.du, b: v.dv }
    }

    pub fn normalized(self) -> Self {
        match self {
            Direction::Vector { a, b } => Direction::vector(WrapVector::new(a, b)),
            other => other,
        }
    }

    pub fn as_vector(self) -> Option<WrapVector> {
        match self {
            Direction::Vector { a, b } => Some(WrapVector::new(a, b)),
            _ => None,
        }
    }

    /// Image under a change of lattice basis; zero and infinity are fixed.
    pub fn transformed(self, m: &Matrix2) -> Self {
        match self {
            Direction::Vector { a, b } => Direction::vector(m.apply(WrapVector::new(a, b))),
            other => other,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Zero => f.write_str("(0,0)"),
            Direction::Vector { a, b } => write!(f, "({a},{b})"),
            Direction::Infinity => f.write_str("(∞,∞)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    IsolatedKnot,
    EssentialComponent,
    ChainLink,
    FullPolycatenane,
}

/// (longitude count, meridian count).
pub type BoundaryCounts = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub kind: ElementKind,
    pub compound: usize,
    pub components: Vec<usize>,
    pub direction: Direction,
    pub boundary_intersections: BoundaryCounts,
    /// Wrap vectors along each member, for auditing the counts.
    pub wrap_sequence: Vec<Vec<WrapVector>>,
}

fn boundary_counts(t: &TracedDiagram, members: &[usize]) -> (BoundaryCounts, Vec<Vec<WrapVector>>) {
    let seqs: Vec<Vec<WrapVector>> = members.iter().map(|&c| t.wrap_sequence(c)).collect();
    let (mut longitude, mut meridian) = (0, 0);
    for w in seqs.iter().flatten() {
        longitude += w.dv.abs();
        meridian += w.du.abs();
    }
    ((longitude, meridian), seqs)
}

fn element(t: &TracedDiagram, kind: ElementKind, compound: usize, components: Vec<usize>, direction: Direction) -> Element {
    let (boundary_intersections, wrap_sequence) = boundary_counts(t, &components);
    Element { kind, compound, components, direction, boundary_intersections, wrap_sequence }
}

/// Directional elements of every compound. Fails when some null cluster could
/// not be decided as chains or a full polycatenane.
pub fn elements(t: &TracedDiagram, compounds: &[Compound]) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for c in compounds {
        if c.undetermined {
            return Err(DptError::DecompositionUndetermined(c.id));
        }
        for (&m, &h) in c.components.iter().zip(&c.homologies) {
            if !h.is_zero() {
                out.push(element(t, ElementKind::EssentialComponent, c.id, vec![m], Direction::vector(h)));
            }
        }
        for n in &c.null_clusters {
            let knots: Vec<usize> = if n.rank == 0 { n.components.clone() } else { n.hanging.clone() };
            for k in knots {
                out.push(element(t, ElementKind::IsolatedKnot, c.id, vec![k], Direction::Zero));
            }
            match (&n.decomposition, n.rank) {
                (_, 0) => {}
                (Decomposition::NotApplicable, _) => {
                    let dir = crate::lattice::Lattice::spanned_by(n.generators.iter().copied())
                        .direction()
                        .expect("rank one cluster");
                    out.push(element(t, ElementKind::ChainLink, c.id, n.core.clone(), Direction::vector(dir)));
                }
                (Decomposition::Parts { full, chains, .. }, _) => {
                    for part in full {
                        out.push(element(t, ElementKind::FullPolycatenane, c.id, part.clone(), Direction::Infinity));
                    }
                    for g in chains {
                        out.push(element(
                            t,
                            ElementKind::ChainLink,
                            c.id,
                            g.components.clone(),
                            Direction::vector(g.direction),
                        ));
                    }
                }
                (Decomposition::Undetermined, _) => unreachable!("checked above"),
            }
        }
    }
    Ok(out)
}

/// The direction set and the number of elements in each direction.
pub fn motif_direction(elements: &[Element]) -> BTreeMap<Direction, usize> {
    let mut m = BTreeMap::new();
    for e in elements {
        *m.entry(e.direction.normalized()).or_insert(0) += 1;
    }
    m
}

pub fn direction_count(elements: &[Element]) -> usize {
    motif_direction(elements).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum DirectionalType {
    Zero,
    Infinity,
    N { n: usize },
    ZeroInfinity,
    NZero { n: usize },
    NInfinity { n: usize },
    NZeroInfinity { n: usize },
}

impl fmt::Display for DirectionalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionalType::Zero => f.write_str("0"),
            DirectionalType::Infinity => f.write_str("∞"),
            DirectionalType::N { n } => write!(f, "{n}"),
            DirectionalType::ZeroInfinity => f.write_str("(0,∞)"),
            DirectionalType::NZero { n } => write!(f, "({n},0)"),
            DirectionalType::NInfinity { n } => write!(f, "({n},∞)"),
            DirectionalType::NZeroInfinity { n } => write!(f, "({n},0,∞)"),
        }
    }
}

pub fn directional_type<'a>(directions: impl IntoIterator<Item = &'a Direction>) -> Result<DirectionalType> {
    let set: BTreeSet<Direction> = directions.into_iter().map(|d| d.normalized()).collect();
    let zero = set.contains(&Direction::Zero);
    let inf = set.contains(&Direction::Infinity);
    let n = set.iter().filter(|d| matches!(d, Direction::Vector { .. })).count();
    Ok(match (n, zero, inf) {
        (0, false, false) => return Err(DptError::NoElements),
        (0, true, false) => DirectionalType::Zero,
        (0, false, true) => DirectionalType::Infinity,
        (0, true, true) => DirectionalType::ZeroInfinity,
        (n, false, false) => DirectionalType::N { n },
        (n, true, false) => DirectionalType::NZero { n },
        (n, false, true) => DirectionalType::NInfinity { n },
        (n, true, true) => DirectionalType::NZeroInfinity { n },
    })
}

/// An `(m·a, m·b)`-torus link: `m` parallel axes of direction `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusLinkAxis {
    pub a: i64,
    pub b: i64,
    pub multiplicity: usize,
}

impl fmt::Display for TorusLinkAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.multiplicity as i64;
        let kind = if m == 1 { "knot" } else { "link" };
        write!(f, "({},{})-torus {kind}", m * self.a, m * self.b)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisMotif {
    pub torus_links: Vec<TorusLinkAxis>,
    pub trivial_knots: usize,
    /// Boundary counts of each noncontractible trivial loop.
    pub noncontractible_loops: Vec<BoundaryCounts>,
}

fn count_word(n: usize) -> String {
    const WORDS: [&str; 11] = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];
    WORDS.get(n).map(|s| s.to_string()).unwrap_or_else(|| n.to_string())
}

impl AxisMotif {
    /// Number of distinct directions carried by the axes.
    pub fn direction_count(&self) -> usize {
        self.torus_links.len() + usize::from(self.trivial_knots > 0) + usize::from(!self.noncontractible_loops.is_empty())
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torus_links.iter().map(|t| format!("a {t}")).collect();
        match self.trivial_knots {
            0 => {}
            1 => parts.push("a trivial knot".into()),
            n => parts.push(format!("{} trivial knots", count_word(n))),
        }
        match self.noncontractible_loops.len() {
            0 => {}
            1 => parts.push("one noncontractible loop".into()),
            n => parts.push(format!("{} noncontractible loops", count_word(n))),
        }
        match parts.len() {
            0 => "empty".into(),
            1 => parts.remove(0),
            _ => {
                let last = parts.pop().unwrap();
                format!("{} and {last}", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for AxisMotif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub fn axis_motif(t: &TracedDiagram, elements: &[Element]) -> AxisMotif {
    let mut links: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut axis = AxisMotif::default();
    for e in elements {
        match e.direction {
            Direction::Vector { a, b } => *links.entry((a, b)).or_insert(0) += 1,
            Direction::Zero => axis.trivial_knots += 1,
            Direction::Infinity => {
                for &c in &e.components {
                    axis.noncontractible_loops.push(boundary_counts(t, &[c]).0);
                }
            }
        }
    }
    axis.torus_links = links.into_iter().map(|((a, b), multiplicity)| TorusLinkAxis { a, b, multiplicity }).collect();
    axis.noncontractible_loops.sort();
    axis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_identifies_opposites() {
        let d = Direction::vector(WrapVector::new(-1, 2));
        assert_eq!(d, Direction::Vector { a: 1, b: -2 });
        assert_eq!(d.normalized(), d);
        assert_eq!(Direction::vector(WrapVector::new(0, -3)), Direction::Vector { a: 0, b: 3 });
        assert_ne!(Direction::vector(WrapVector::new(1, 2)), Direction::vector(WrapVector::new(2, 1)));
    }

    #[test]
    fn types_follow_membership() {
        let z = Direction::Zero;
        let i = Direction::Infinity;
        let u = Direction::Vector { a: 1, b: 0 };
        let v = Direction::Vector { a: 0, b: 1 };
        assert_eq!(directional_type([&z]).unwrap(), DirectionalType::Zero);
        assert_eq!(directional_type([&u, &v]).unwrap(), DirectionalType::N { n: 2 });
        assert_eq!(directional_type([&i, &z, &u, &v]).unwrap().to_string(), "(2,0,∞)");
        assert_eq!(directional_type([&i, &z]).unwrap(), DirectionalType::ZeroInfinity);
        assert!(matches!(directional_type([]), Err(DptError::NoElements)));
    }

    #[test]
    fn axis_description_reads_naturally() {
        let a = AxisMotif {
            torus_links: vec![TorusLinkAxis { a: 1, b: 0, multiplicity: 3 }],
            trivial_knots: 2,
            noncontractible_loops: vec![],
        };
        assert_eq!(a.describe(), "a (3,0)-torus link and two trivial knots");
        assert_eq!(a.direction_count(), 2);
    }
}
