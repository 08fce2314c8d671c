//! Scenario files: a landmark graph plus a flight plan, stored as JSON.
//!
//! ```json
//! {
//!   "name": "grid-2x2",
//!   "vertices": [{"id": 0, "x": 0.0, "y": 0.0, "label": "gate"}],
//!   "edges": [{"a": 0, "b": 1, "length": 10.0}],
//!   "plan": [0, 1]
//! }
//! ```
//!
//! `label` and `length` are optional; a missing length defaults to the
//! straight-line distance. Floats are written in shortest round-trip form,
//! so every value reloads bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Edge, FlightPlan, Landmark, LandmarkGraph, LandmarkId, TerrainError};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("scenario schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid scenario: {0}")]
    Invalid(#[from] TerrainError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub graph: LandmarkGraph,
    pub plan: FlightPlan,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        graph: LandmarkGraph,
        path: Vec<LandmarkId>,
    ) -> Result<Self, TerrainError> {
        let plan = FlightPlan::new(&graph, path)?;
        Ok(Scenario {
            name: name.into(),
            graph,
            plan,
        })
    }

    pub fn plan_length(&self) -> f64 {
        self.plan.length(&self.graph)
    }

    pub fn to_json(&self) -> String {
        let file = ScenarioFile {
            name: self.name.clone(),
            vertices: self
                .graph
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    id: v.id,
                    x: v.position.x,
                    y: v.position.y,
                    label: v.label.clone(),
                })
                .collect(),
            edges: self
                .graph
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    a: e.a,
                    b: e.b,
                    length: Some(e.length),
                })
                .collect(),
            plan: self.plan.path().to_vec(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("scenario serialises");
        text.push('\n');
        text
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, ScenarioError> {
        let mut de = serde_json::Deserializer::from_slice(bytes);
        let file: ScenarioFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            ScenarioError::Schema {
                path,
                message: e.into_inner().to_string(),
            }
        })?;
        file.into_scenario()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
    plan: Vec<LandmarkId>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: LandmarkId,
    x: f64,
    y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    a: LandmarkId,
    b: LandmarkId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    length: Option<f64>,
}

impl ScenarioFile {
    fn into_scenario(self) -> Result<Scenario, ScenarioError> {
        let vertices: Vec<Landmark> = self
            .vertices
            .into_iter()
            .map(|v| Landmark {
                id: v.id,
                position: super::Point::new(v.x, v.y),
                label: v.label,
            })
            .collect();
        let position = |id: LandmarkId| vertices.iter().find(|v| v.id == id).map(|v| v.position);
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let length = e
                    .length
                    .unwrap_or_else(|| match (position(e.a), position(e.b)) {
                        (Some(pa), Some(pb)) => pa.distance(&pb),
                        _ => f64::NAN,
                    });
                Edge::new(e.a, e.b, length)
            })
            .collect();
        let graph = LandmarkGraph::new(vertices, edges)?;
        Ok(Scenario::new(self.name, graph, self.plan)?)
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Scenario::from_json(&bytes)
}

pub fn save_scenario(scenario: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let path = path.as_ref();
    fs::write(path, scenario.to_json()).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::super::generate_grid;
    use super::*;

    #[test]
    fn round_trip_small_grid() {
        let graph = generate_grid(2, 2, 10.0).unwrap();
        let scenario = Scenario::new("tiny", graph, vec![0, 1]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.json");
        save_scenario(&scenario, &path).unwrap();
        assert_eq!(load_scenario(&path).unwrap(), scenario);
    }

    #[test]
    fn awkward_floats_survive() {
        let vertices = vec![
            Landmark::new(-5, 0.1 + 0.2, 1.0 / 3.0).with_label("gate \"A\""),
            Landmark::new(7, 1e-9, 123456.789012345),
        ];
        let d = vertices[0].position.distance(&vertices[1].position);
        let graph = LandmarkGraph::new(vertices, vec![Edge::new(7, -5, d * 1.25)]).unwrap();
        let scenario = Scenario::new("odd", graph, vec![7, -5]).unwrap();
        let back = Scenario::from_json(scenario.to_json().as_bytes()).unwrap();
        assert_eq!(back, scenario);
    }

    #[test]
    fn missing_length_defaults_to_euclidean() {
        let json =
            br#"{"name": "n", "vertices": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": 3, "y": 4}],
            "edges": [{"a": 1, "b": 2}], "plan": [2, 1]}"#;
        let s = Scenario::from_json(json).unwrap();
        assert_eq!(s.graph.edge_length(1, 2), Some(5.0));
        assert_eq!(s.plan.segments(), 1);
        assert_eq!(s.plan_length(), 5.0);
    }

    #[test]
    fn non_edge_hop_is_rejected() {
        let graph = generate_grid(2, 2, 10.0).unwrap();
        let mut text = Scenario::new("g", graph, vec![0]).unwrap().to_json();
        text = text.replace("\"plan\": [\n    0\n  ]", "\"plan\": [0, 3]");
        match Scenario::from_json(text.as_bytes()) {
            Err(ScenarioError::Invalid(TerrainError::PlanNotAnEdge { from: 0, to: 3 })) => {}
            other => panic!("expected non-edge error, got {other:?}"),
        }
    }

    #[test]
    fn schema_errors_carry_field_path() {
        let json = br#"{"name": "n", "vertices": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": "far", "y": 4}],
            "edges": [], "plan": [1]}"#;
        match Scenario::from_json(json) {
            Err(ScenarioError::Schema { path, .. }) => assert_eq!(path, "vertices[1].x"),
            other => panic!("expected schema error, got {other:?}"),
        }
        let json = br#"{"name": "n", "vertices": [], "edges": [], "plan": [], "extra": 1}"#;
        assert!(matches!(
            Scenario::from_json(json),
            Err(ScenarioError::Schema { .. })
        ));
        let json = br#"{"name": "n", "vertices": [], "edges": []}"#;
        assert!(matches!(
            Scenario::from_json(json),
            Err(ScenarioError::Schema { .. })
        ));
    }

    #[test]
    fn unknown_edge_endpoint() {
        let json = br#"{"name": "n", "vertices": [{"id": 1, "x": 0, "y": 0}],
            "edges": [{"a": 1, "b": 9}], "plan": [1]}"#;
        assert!(matches!(
            Scenario::from_json(json),
            Err(ScenarioError::Invalid(TerrainError::UnknownVertex(9)))
        ));
    }

    #[test]
    fn missing_file_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_scenario(dir.path().join("absent.json")),
            Err(ScenarioError::Io { .. })
        ));
    }
}
