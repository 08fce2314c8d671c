//! Landmark graphs, flight plans and the scenario files that bundle them.

mod graph;
mod grid;
mod osm;
mod plan;
mod scenario;

use thiserror::Error;

pub use graph::{Edge, Landmark, LandmarkGraph, Point, LENGTH_SLACK};
pub use grid::generate_grid;
pub use osm::{haversine_m, parse_osm_subset, EARTH_RADIUS_M};
pub use plan::{extremal_pair, shortest_flight_plan, FlightPlan};
pub use scenario::{load_scenario, save_scenario, Scenario, ScenarioError};

pub type LandmarkId = i64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TerrainError {
    #[error("grid needs at least 2 rows and 2 columns, got {rows}x{cols}")]
    GridTooSmall { rows: u32, cols: u32 },
    #[error("grid spacing must be positive and finite, got {0}")]
    InvalidSpacing(f64),
    #[error("landmark {0} appears more than once")]
    DuplicateVertex(LandmarkId),
    #[error("landmark {0} has a non-finite coordinate")]
    NonFiniteCoordinate(LandmarkId),
    #[error("landmark {0} does not exist")]
    UnknownVertex(LandmarkId),
    #[error("edge {0} -> {0} is a self-loop")]
    SelfLoop(LandmarkId),
    #[error("edge {0} - {1} is listed twice")]
    DuplicateEdge(LandmarkId, LandmarkId),
    #[error("edge {a} - {b} has length {length} m, shorter than the {straight} m straight line")]
    EdgeTooShort {
        a: LandmarkId,
        b: LandmarkId,
        length: f64,
        straight: f64,
    },
    #[error("malformed XML at line {line}, column {column}: {message}")]
    Xml {
        line: u32,
        column: u32,
        message: String,
    },
    #[error("way {way} references missing node {node}")]
    OsmMissingNode { way: LandmarkId, node: LandmarkId },
    #[error("bad `{attribute}` on <{element}>: {message}")]
    OsmAttribute {
        element: &'static str,
        attribute: String,
        message: String,
    },
    #[error(
        "map extent too large for the local projection: edge {a} - {b} is {length} m on the \
         sphere but {straight} m on the plane"
    )]
    ProjectionDistortion {
        a: LandmarkId,
        b: LandmarkId,
        length: f64,
        straight: f64,
    },
    #[error("flight plan is empty")]
    EmptyPlan,
    #[error("flight plan hops from {from} to {to}, which are not adjacent")]
    PlanNotAnEdge { from: LandmarkId, to: LandmarkId },
    #[error("flight plan visits landmark {0} twice")]
    PlanRepeatsVertex(LandmarkId),
    #[error("landmark {to} is unreachable from {from}")]
    Unreachable { from: LandmarkId, to: LandmarkId },
}
