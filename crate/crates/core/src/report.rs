//! Aggregated invariants of a motif, as text or JSON.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::compound::{compounds_of, interlink_graph, motif_class_of, Compound, CompoundClass, MotifClass, Policy};
use crate::direction::{
    axis_motif, directional_type, elements, motif_direction, AxisMotif, Direction, DirectionalType, Element,
};
use crate::error::{DptError, Result};
use crate::lattice::WrapVector;
use crate::motif::{TorusDiagram, TracedDiagram};

/// Every intermediate result of the analysis pipeline.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub traced: TracedDiagram,
    pub policy: Policy,
    pub compounds: Vec<Compound>,
    pub motif_class: MotifClass,
    /// `None` when some null cluster was too large to decompose.
    pub elements: Option<Vec<Element>>,
}

impl Analysis {
    pub fn new(d: &TorusDiagram, policy: Policy) -> Result<Self> {
        let traced = TracedDiagram::new(d)?;
        let graph = interlink_graph(&traced, policy);
        let compounds = compounds_of(&traced, &graph);
        let motif_class = motif_class_of(&compounds)?;
        let elements = match elements(&traced, &compounds) {
            Ok(e) => Some(e),
            Err(DptError::DecompositionUndetermined(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Analysis { traced, policy, compounds, motif_class, elements })
    }

    pub fn undetermined(&self) -> bool {
        self.elements.is_none()
    }

    pub fn direction_set(&self) -> Option<BTreeSet<Direction>> {
        self.elements.as_ref().map(|e| motif_direction(e).into_keys().collect())
    }

    pub fn direction_count(&self) -> Option<usize> {
        self.direction_set().map(|s| s.len())
    }

    pub fn directional_type(&self) -> Option<DirectionalType> {
        self.direction_set().and_then(|s| directional_type(&s).ok())
    }

    pub fn axis_motif(&self) -> Option<AxisMotif> {
        self.elements.as_ref().map(|e| axis_motif(&self.traced, e))
    }

    pub fn subclasses(&self) -> BTreeSet<String> {
        self.compounds.iter().map(|c| c.subclass.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompoundSummary {
    pub id: usize,
    pub components: Vec<usize>,
    pub class: CompoundClass,
    pub subclass: String,
    pub rank: usize,
    pub generators: Vec<WrapVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    pub ambiguous_decomposition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionEntry {
    pub direction: Direction,
    pub elements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub policy: Policy,
    pub components: usize,
    pub crossings: usize,
    pub compounds: Vec<CompoundSummary>,
    pub motif_class: MotifClass,
    pub elements: Option<Vec<Element>>,
    pub directions: Option<Vec<DirectionEntry>>,
    pub direction_count: Option<usize>,
    pub directional_type: Option<DirectionalType>,
    pub axis_motif: Option<AxisMotif>,
    /// Ambiguity and limitation notes.
    pub flags: Vec<String>,
}

pub fn invariant_report(d: &TorusDiagram, policy: Policy) -> Result<InvariantReport> {
    Ok(report_from(&Analysis::new(d, policy)?, &d.name))
}

pub fn report_from(a: &Analysis, name: &str) -> InvariantReport {
    let compounds = a
        .compounds
        .iter()
        .map(|c| CompoundSummary {
            id: c.id,
            components: c.components.clone(),
            class: c.class,
            subclass: c.subclass.clone(),
            rank: c.rank,
            generators: c.generators.clone(),
            direction: c.direction.map(Direction::vector),
            ambiguous_decomposition: c.ambiguous_decomposition,
        })
        .collect();
    let mut flags = vec![format!("policy: {}", a.policy)];
    for c in &a.compounds {
        if c.ambiguous_decomposition {
            flags.push(format!("compound {}: several minimal chain decompositions", c.id));
        }
        if c.undetermined {
            flags.push(format!("compound {}: decomposition-undetermined", c.id));
        }
    }
    InvariantReport {
        name: name.to_string(),
        policy: a.policy,
        components: a.traced.components.len(),
        crossings: a.traced.crossing_count(),
        compounds,
        motif_class: a.motif_class,
        elements: a.elements.clone(),
        directions: a.elements.as_ref().map(|e| {
            motif_direction(e).into_iter().map(|(direction, elements)| DirectionEntry { direction, elements }).collect()
        }),
        direction_count: a.direction_count(),
        directional_type: a.directional_type(),
        axis_motif: a.axis_motif(),
        flags,
    }
}

fn strip_compound(s: &str) -> &str {
    s.strip_suffix(" compound").unwrap_or(s)
}

impl InvariantReport {
    pub fn subclass_set(&self) -> BTreeSet<String> {
        self.compounds.iter().map(|c| c.subclass.clone()).collect()
    }

    pub fn direction_set(&self) -> Option<BTreeSet<Direction>> {
        self.directions.as_ref().map(|d| d.iter().map(|e| e.direction).collect())
    }

    /// One-line digest: class, distinct subclasses and directional type.
    pub fn summary_line(&self) -> String {
        let subclasses: Vec<String> =
            self.subclass_set().iter().map(|s| strip_compound(s).to_string()).collect();
        let ty = self.directional_type.map(|t| t.to_string()).unwrap_or_else(|| "undetermined".into());
        format!("class: {}; subclass: {}; type: {ty}", self.motif_class, subclasses.join(", "))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.summary_line());
        let _ = writeln!(s, "name: {}", self.name);
        let _ = writeln!(s, "policy: {}", self.policy);
        let _ = writeln!(s, "components: {}", self.components);
        let _ = writeln!(s, "crossings: {}", self.crossings);
        let _ = writeln!(s, "compounds: {}", self.compounds.len());
        for c in &self.compounds {
            let gens: Vec<String> = c.generators.iter().map(|g| g.to_string()).collect();
            let _ = write!(
                s,
                "  [{}] {} (rank {}, generators [{}], components {:?})",
                c.id,
                c.subclass,
                c.rank,
                gens.join(", "),
                c.components
            );
            if let Some(d) = c.direction {
                let _ = write!(s, " direction {d}");
            }
            let _ = writeln!(s);
        }
        match (&self.directions, &self.elements) {
            (Some(dirs), Some(elements)) => {
                let _ = writeln!(s, "elements: {}", elements.len());
                for e in elements {
                    let (lon, mer) = e.boundary_intersections;
                    let _ = writeln!(
                        s,
                        "  {:?} {} components {:?} (longitude {lon}, meridian {mer})",
                        e.kind, e.direction, e.components
                    );
                }
                let set: Vec<String> = dirs.iter().map(|d| d.direction.to_string()).collect();
                let _ = writeln!(s, "direction: {{{}}}", set.join(", "));
                let _ = writeln!(s, "direction count: {}", dirs.len());
            }
            _ => {
                let _ = writeln!(s, "direction: undetermined");
            }
        }
        if let Some(t) = self.directional_type {
            let _ = writeln!(s, "directional type: {t}");
        }
        if let Some(a) = &self.axis_motif {
            let _ = writeln!(s, "axis-motif: {a}");
        }
        for f in &self.flags {
            let _ = writeln!(s, "note: {f}");
        }
        s
    }
}

/// Table-level invariants compared between two motifs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableInvariant {
    Crossings,
    Components,
    DirectionCount,
    DirectionalType,
    Class,
    Subclasses,
}

impl TableInvariant {
    pub const ALL: [TableInvariant; 6] = [
        TableInvariant::Crossings,
        TableInvariant::Components,
        TableInvariant::DirectionCount,
        TableInvariant::DirectionalType,
        TableInvariant::Class,
        TableInvariant::Subclasses,
    ];
}

impl InvariantReport {
    /// Subclasses of the ribbon and cover compounds; null-homotopic compounds
    /// are already visible in the motif class.
    pub fn table_subclasses(&self) -> BTreeSet<String> {
        self.compounds.iter().filter(|c| c.class != CompoundClass::Null).map(|c| c.subclass.clone()).collect()
    }
}

/// Which table invariants differ between two reports.
pub fn table_differences(a: &InvariantReport, b: &InvariantReport) -> BTreeSet<TableInvariant> {
    TableInvariant::ALL
        .into_iter()
        .filter(|inv| match inv {
            TableInvariant::Crossings => a.crossings != b.crossings,
            TableInvariant::Components => a.components != b.components,
            TableInvariant::DirectionCount => a.direction_count != b.direction_count,
            TableInvariant::DirectionalType => a.directional_type != b.directional_type,
            TableInvariant::Class => a.motif_class != b.motif_class,
            TableInvariant::Subclasses => a.table_subclasses() != b.table_subclasses(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::FreeLoop;

    #[test]
    fn single_loop_report() {
        let mut d = TorusDiagram::new("E1");
        d.free_loops.push(FreeLoop::new(0, WrapVector::new(1, 0)));
        let r = invariant_report(&d, Policy::LinkingAdjacency).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.direction_count, Some(1));
        assert_eq!(r.summary_line(), "class: ribbon; subclass: essential ribbon; type: 1");
        let json = serde_json::to_string(&r).unwrap();
        let back: InvariantReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(table_differences(&r, &back).is_empty());
    }

    #[test]
    fn empty_motif_is_an_error() {
        let d = TorusDiagram::new("nothing");
        assert!(matches!(invariant_report(&d, Policy::LinkingAdjacency), Err(DptError::EmptyMotif)));
    }
}
