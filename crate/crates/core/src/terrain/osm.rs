//! Importer for the `node` / `way` / `nd` subset of OpenStreetMap XML.
//!
//! Only nodes referenced by at least one way become landmarks. Coordinates
//! are projected onto a local plane with an equirectangular projection
//! centred on the bounding box of those nodes:
//!
//! ```text
//! x = R cos(lat0) (lon - lon0)
//! y = R (lat - lat0)
//! ```
//!
//! Edges carry great-circle (haversine) lengths. At campus scale (a few km)
//! the projected straight-line distance stays within about 0.05% of the
//! great-circle distance; an extract large enough to break the 0.1% edge
//! length slack is rejected rather than silently distorted.
//!
//! Consecutive `nd` pairs become edges. Repeated edges keep the shorter
//! length; self-loops and zero-length hops between coincident nodes are
//! dropped. Every other element is ignored.

use std::collections::{BTreeMap, HashMap};

use super::graph::LENGTH_SLACK;
use super::{Edge, Landmark, LandmarkGraph, LandmarkId, TerrainError};

/// Mean Earth radius in metres.
pub const EARTH_RADIUS_M: f64 = 6_371_008.8;

#[derive(Clone, Copy, Debug)]
struct GeoNode {
    lat: f64,
    lon: f64,
}

/// Great-circle distance in metres between two lat/lon pairs in degrees.
pub fn haversine_m(lat1: f64, lon1: f64, lat2: f64, lon2: f64) -> f64 {
    let (phi1, phi2) = (lat1.to_radians(), lat2.to_radians());
    let dphi = phi2 - phi1;
    let dlambda = (lon2 - lon1).to_radians();
    let h = (dphi / 2.0).sin().powi(2) + phi1.cos() * phi2.cos() * (dlambda / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_M * h.sqrt().min(1.0).asin()
}

fn attr<'a>(
    node: &roxmltree::Node<'a, '_>,
    name: &str,
    element: &'static str,
) -> Result<&'a str, TerrainError> {
    node.attribute(name)
        .ok_or_else(|| TerrainError::OsmAttribute {
            element,
            attribute: name.to_string(),
            message: "missing".to_string(),
        })
}

fn parse_attr<T: std::str::FromStr>(
    node: &roxmltree::Node<'_, '_>,
    name: &str,
    element: &'static str,
) -> Result<T, TerrainError>
where
    T::Err: std::fmt::Display,
{
    let raw = attr(node, name, element)?;
    raw.trim()
        .parse::<T>()
        .map_err(|e| TerrainError::OsmAttribute {
            element,
            attribute: name.to_string(),
            message: format!("{raw:?}: {e}"),
        })
}

pub fn parse_osm_subset(document: &[u8]) -> Result<LandmarkGraph, TerrainError> {
    let text = std::str::from_utf8(document).map_err(|e| {
        let (line, column) = line_column(document, e.valid_up_to());
        TerrainError::Xml {
            line,
            column,
            message: "document is not valid UTF-8".to_string(),
        }
    })?;
    let doc = roxmltree::Document::parse(text).map_err(|e| {
        let pos = e.pos();
        TerrainError::Xml {
            line: pos.row,
            column: pos.col,
            message: e.to_string(),
        }
    })?;

    let mut nodes: HashMap<LandmarkId, GeoNode> = HashMap::new();
    let mut ways: Vec<(LandmarkId, Vec<LandmarkId>)> = Vec::new();
    for element in doc.descendants().filter(|n| n.is_element()) {
        match element.tag_name().name() {
            "node" => {
                let id = parse_attr::<LandmarkId>(&element, "id", "node")?;
                let lat = parse_attr::<f64>(&element, "lat", "node")?;
                let lon = parse_attr::<f64>(&element, "lon", "node")?;
                if !(lat.is_finite() && lon.is_finite() && lat.abs() <= 90.0 && lon.abs() <= 180.0)
                {
                    return Err(TerrainError::OsmAttribute {
                        element: "node",
                        attribute: "lat/lon".to_string(),
                        message: format!("node {id} at ({lat}, {lon}) is off the globe"),
                    });
                }
                nodes.insert(id, GeoNode { lat, lon });
            }
            "way" => {
                let id = parse_attr::<LandmarkId>(&element, "id", "way")?;
                let refs = element
                    .children()
                    .filter(|c| c.has_tag_name("nd"))
                    .map(|nd| parse_attr::<LandmarkId>(&nd, "ref", "nd"))
                    .collect::<Result<Vec<_>, _>>()?;
                ways.push((id, refs));
            }
            _ => {}
        }
    }

    let mut used: BTreeMap<LandmarkId, GeoNode> = BTreeMap::new();
    for (way, refs) in &ways {
        for r in refs {
            let node = nodes.get(r).ok_or(TerrainError::OsmMissingNode {
                way: *way,
                node: *r,
            })?;
            used.insert(*r, *node);
        }
    }
    if used.is_empty() {
        return Ok(LandmarkGraph::default());
    }

    let (mut lat_min, mut lat_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lon_min, mut lon_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for n in used.values() {
        lat_min = lat_min.min(n.lat);
        lat_max = lat_max.max(n.lat);
        lon_min = lon_min.min(n.lon);
        lon_max = lon_max.max(n.lon);
    }
    let lat0 = 0.5 * (lat_min + lat_max);
    let lon0 = 0.5 * (lon_min + lon_max);
    let x_scale = EARTH_RADIUS_M * lat0.to_radians().cos();

    let vertices: Vec<Landmark> = used
        .iter()
        .map(|(&id, n)| {
            Landmark::new(
                id,
                x_scale * (n.lon - lon0).to_radians(),
                EARTH_RADIUS_M * (n.lat - lat0).to_radians(),
            )
        })
        .collect();
    let position: HashMap<LandmarkId, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id, i))
        .collect();

    let mut edges: BTreeMap<(LandmarkId, LandmarkId), f64> = BTreeMap::new();
    for (_, refs) in &ways {
        for pair in refs.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b {
                continue;
            }
            let (na, nb) = (used[&a], used[&b]);
            let length = haversine_m(na.lat, na.lon, nb.lat, nb.lon);
            if length <= 0.0 {
                continue;
            }
            let straight = vertices[position[&a]]
                .position
                .distance(&vertices[position[&b]].position);
            if length < straight * LENGTH_SLACK {
                return Err(TerrainError::ProjectionDistortion {
                    a,
                    b,
                    length,
                    straight,
                });
            }
            let key = (a.min(b), a.max(b));
            edges
                .entry(key)
                .and_modify(|l| *l = l.min(length))
                .or_insert(length);
        }
    }

    let edges = edges
        .into_iter()
        .map(|((a, b), length)| Edge::new(a, b, length))
        .collect();
    LandmarkGraph::new(vertices, edges)
}

fn line_column(bytes: &[u8], offset: usize) -> (u32, u32) {
    let before = &bytes[..offset.min(bytes.len())];
    let line = before.iter().filter(|&&b| b == b'\n').count() as u32 + 1;
    let column = before.iter().rev().take_while(|&&b| b != b'\n').count() as u32 + 1;
    (line, column)
}
