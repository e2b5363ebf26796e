//! JSON motif files.
//!
//! ```json
//! { "name": "E6", "source": "...", "crossings": [{"id": 0, "sign": 1}],
//!   "edges": [{"id": 0, "from": {"crossing": 0, "port": "under-out"},
//!              "to": {"crossing": 0, "port": "under-in"}, "wrap": [1, 0]}],
//!   "free_loops": [] }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{DptError, Result};
use crate::motif::{validate, Crossing, Edge, FreeLoop, TorusDiagram};

/// A diagram together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifFile {
    pub diagram: TorusDiagram,
    pub source: Option<String>,
}

#[derive(Serialize)]
struct Out<'a> {
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'a str>,
    crossings: &'a [Crossing],
    edges: &'a [Edge],
    free_loops: &'a [FreeLoop],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct In {
    name: String,
    #[serde(default)]
    source: Option<String>,
    #[serde(default)]
    crossings: Vec<Crossing>,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    free_loops: Vec<FreeLoop>,
}

/// Reads a motif file without checking the diagram's invariants.
pub fn parse_unchecked(text: &str) -> Result<MotifFile> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: In = serde_path_to_error::deserialize(&mut de).map_err(|e| DptError::Parse {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| DptError::Parse { path: ".".into(), message: e.to_string() })?;
    let diagram = TorusDiagram { name: raw.name, crossings: raw.crossings, edges: raw.edges, free_loops: raw.free_loops };
    Ok(MotifFile { diagram, source: raw.source })
}

/// Reads and validates a motif file.
pub fn parse_file(text: &str) -> Result<MotifFile> {
    let file = parse_unchecked(text)?;
    let report = validate(&file.diagram);
    if !report.is_ok() {
        return Err(DptError::InvalidDiagram(report.violations));
    }
    Ok(file)
}

pub fn parse(text: &str) -> Result<TorusDiagram> {
    parse_file(text).map(|f| f.diagram)
}

/// Pretty JSON with ids in ascending order; identical diagrams give identical bytes.
pub fn serialize_file(file: &MotifFile) -> String {
    let d = file.diagram.clone().sorted();
    let out = Out {
        name: &d.name,
        source: file.source.as_deref(),
        crossings: &d.crossings,
        edges: &d.edges,
        free_loops: &d.free_loops,
    };
    let mut s = serde_json::to_string_pretty(&out).expect("diagram serializes");
    s.push('\n');
    s
}

pub fn serialize(d: &TorusDiagram) -> String {
    serialize_file(&MotifFile { diagram: d.clone(), source: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_entries_round_trip_exactly() {
        for e in catalog::entries() {
            let file = MotifFile { diagram: e.diagram(), source: Some(e.source.to_string()) };
            let text = serialize_file(&file);
            let back = parse_file(&text).unwrap();
            assert_eq!(back, file, "{}", e.name);
            assert_eq!(serialize_file(&back), text);
        }
    }

    #[test]
    fn short_wrap_is_reported_at_its_key() {
        let text = r#"{"name": "x", "free_loops": [{"id": 0, "wrap": [1]}]}"#;
        match parse(text) {
            Err(DptError::Parse { path, .. }) => assert_eq!(path, "free_loops[0].wrap"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse("{\n  \"name\": \"x\",\n  \"edges\": [\n}").unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(parse(r#"{"name": "x", "edge": []}"#).is_err());
    }

    #[test]
    fn invalid_diagrams_fail_validation() {
        let text = r#"{"name": "x", "crossings": [{"id": 0, "sign": 1}]}"#;
        assert!(matches!(parse(text), Err(DptError::InvalidDiagram(_))));
        assert!(parse_unchecked(text).is_ok());
    }
}
