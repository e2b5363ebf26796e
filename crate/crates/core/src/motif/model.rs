use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::WrapVector;

macro_rules! id_type {
    ($name:ident, $prefix:literal) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(CrossingId, "c");
id_type!(EdgeId, "e");
id_type!(LoopId, "l");

/// Which strand of a crossing a port belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    Under,
    Over,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Port {
    UnderIn,
    UnderOut,
    OverIn,
    OverOut,
}

impl Port {
    pub const ALL: [Port; 4] = [Port::UnderIn, Port::UnderOut, Port::OverIn, Port::OverOut];

    pub fn new(level: Level, incoming: bool) -> Port {
        match (level, incoming) {
            (Level::Under, true) => Port::UnderIn,
            (Level::Under, false) => Port::UnderOut,
            (Level::Over, true) => Port::OverIn,
            (Level::Over, false) => Port::OverOut,
        }
    }

    pub fn level(self) -> Level {
        match self {
            Port::UnderIn | Port::UnderOut => Level::Under,
            Port::OverIn | Port::OverOut => Level::Over,
        }
    }

    pub fn is_in(self) -> bool {
        matches!(self, Port::UnderIn | Port::OverIn)
    }

    /// The port on the same strand at the other side of the crossing.
    pub fn through(self) -> Port {
        match self {
            Port::UnderIn => Port::UnderOut,
            Port::UnderOut => Port::UnderIn,
            Port::OverIn => Port::OverOut,
            Port::OverOut => Port::OverIn,
        }
    }

    pub fn slot(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Port::UnderIn => "under-in",
            Port::UnderOut => "under-out",
            Port::OverIn => "over-in",
            Port::OverOut => "over-out",
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Writhe sign of a crossing with respect to the strand orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(format!("crossing sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

/// Counterclockwise port order around a crossing, fixed by its sign.
pub fn ccw_ports(sign: Sign) -> [Port; 4] {
    match sign {
        Sign::Pos => [Port::UnderIn, Port::OverOut, Port::UnderOut, Port::OverIn],
        Sign::Neg => [Port::UnderIn, Port::OverIn, Port::UnderOut, Port::OverOut],
    }
}

/// The port immediately clockwise of `p`.
pub fn clockwise_next(sign: Sign, p: Port) -> Port {
    let order = ccw_ports(sign);
    let i = order.iter().position(|&q| q == p).expect("port in rotation");
    order[(i + 3) % 4]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub id: CrossingId,
    pub sign: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub crossing: CrossingId,
    pub port: Port,
}

impl Endpoint {
    pub fn new(crossing: CrossingId, port: Port) -> Self {
        Endpoint { crossing, port }
    }
}

/// An oriented arc between two crossings; `wrap` records how often it crosses
/// the sides of the fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub from: Endpoint,
    pub to: Endpoint,
    pub wrap: WrapVector,
}

/// A crossing between a free loop and another free loop, declared without
/// splitting either loop into edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OverMark {
    pub other: LoopId,
    /// Lift position of the other loop's passage relative to this loop's.
    pub translate: WrapVector,
    /// Whether this loop is the over strand.
    pub over: bool,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeLoop {
    pub id: LoopId,
    pub wrap: WrapVector,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub over_marks: Vec<OverMark>,
}

impl FreeLoop {
    pub fn new(id: u32, wrap: WrapVector) -> Self {
        FreeLoop { id: LoopId(id), wrap, over_marks: Vec::new() }
    }
}

/// A motif: a link diagram on the flat torus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDiagram {
    pub name: String,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub free_loops: Vec<FreeLoop>,
}

impl TorusDiagram {
    pub fn new(name: impl Into<String>) -> Self {
        TorusDiagram { name: name.into(), ..Default::default() }
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn free_loop(&self, id: LoopId) -> Option<&FreeLoop> {
        self.free_loops.iter().find(|l| l.id == id)
    }

    pub fn next_crossing_id(&self) -> u32 {
        self.crossings.iter().map(|c| c.id.0 + 1).max().unwrap_or(0)
    }

    pub fn next_edge_id(&self) -> u32 {
        self.edges.iter().map(|e| e.id.0 + 1).max().unwrap_or(0)
    }

    pub fn next_loop_id(&self) -> u32 {
        self.free_loops.iter().map(|l| l.id.0 + 1).max().unwrap_or(0)
    }

    pub fn has_over_marks(&self) -> bool {
        self.free_loops.iter().any(|l| !l.over_marks.is_empty())
    }

    /// Sorts every list by id; the canonical layout used for serialization
    /// and equality checks.
    pub fn sort(&mut self) {
        self.crossings.sort_by_key(|c| c.id);
        self.edges.sort_by_key(|e| e.id);
        self.free_loops.sort_by_key(|l| l.id);
    }

    pub fn sorted(mut self) -> Self {
        self.sort();
        self
    }
}
