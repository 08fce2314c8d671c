use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{LandmarkId, TerrainError};

/// Straight-line lengths may undercut an edge length by this factor at most.
pub const LENGTH_SLACK: f64 = 0.999;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    /// Metres east.
    pub x: f64,
    /// Metres north.
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Landmark {
    pub id: LandmarkId,
    pub position: Point,
    pub label: Option<String>,
}

impl Landmark {
    pub fn new(id: LandmarkId, x: f64, y: f64) -> Self {
        Landmark {
            id,
            position: Point::new(x, y),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// Undirected edge, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: LandmarkId,
    pub b: LandmarkId,
    pub length: f64,
}

impl Edge {
    pub fn new(a: LandmarkId, b: LandmarkId, length: f64) -> Self {
        if a <= b {
            Edge { a, b, length }
        } else {
            Edge { a: b, b: a, length }
        }
    }
}

/// Landmarks joined by weighted undirected edges. Immutable once built.
///
/// Vertices are kept sorted by id and edges by `(a, b)`, so iteration order
/// and serialized output are deterministic.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LandmarkGraph {
    vertices: Vec<Landmark>,
    edges: Vec<Edge>,
    index: HashMap<LandmarkId, usize>,
    // Per vertex: (neighbour index, length), sorted by neighbour id.
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl LandmarkGraph {
    pub fn new(mut vertices: Vec<Landmark>, edges: Vec<Edge>) -> Result<Self, TerrainError> {
        vertices.sort_by_key(|v| v.id);
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !(v.position.x.is_finite() && v.position.y.is_finite()) {
                return Err(TerrainError::NonFiniteCoordinate(v.id));
            }
            if index.insert(v.id, i).is_some() {
                return Err(TerrainError::DuplicateVertex(v.id));
            }
        }

        let mut unique: BTreeMap<(LandmarkId, LandmarkId), Edge> = BTreeMap::new();
        for edge in edges {
            let edge = Edge::new(edge.a, edge.b, edge.length);
            let (Some(&ia), Some(&ib)) = (index.get(&edge.a), index.get(&edge.b)) else {
                let missing = if index.contains_key(&edge.a) {
                    edge.b
                } else {
                    edge.a
                };
                return Err(TerrainError::UnknownVertex(missing));
            };
            if edge.a == edge.b {
                return Err(TerrainError::SelfLoop(edge.a));
            }
            let straight = vertices[ia].position.distance(&vertices[ib].position);
            if !(edge.length.is_finite()
                && edge.length > 0.0
                && edge.length >= straight * LENGTH_SLACK)
            {
                return Err(TerrainError::EdgeTooShort {
                    a: edge.a,
                    b: edge.b,
                    length: edge.length,
                    straight,
                });
            }
            if unique.insert((edge.a, edge.b), edge).is_some() {
                return Err(TerrainError::DuplicateEdge(edge.a, edge.b));
            }
        }

        let edges: Vec<Edge> = unique.into_values().collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for e in &edges {
            let (ia, ib) = (index[&e.a], index[&e.b]);
            adjacency[ia].push((ib, e.length));
            adjacency[ib].push((ia, e.length));
        }
        for list in &mut adjacency {
            // Indices follow id order, so sorting by index sorts by id.
            list.sort_by_key(|&(n, _)| n);
        }

        Ok(LandmarkGraph {
            vertices,
            edges,
            index,
            adjacency,
        })
    }

    /// Every pair of landmarks joined by its straight-line distance. Ids are
    /// assigned `0..n` in input order.
    pub fn complete(positions: &[Point]) -> Result<Self, TerrainError> {
        let vertices: Vec<Landmark> = positions
            .iter()
            .enumerate()
            .map(|(i, p)| Landmark::new(i as LandmarkId, p.x, p.y))
            .collect();
        let mut edges = Vec::new();
        for i in 0..positions.len() {
            for j in i + 1..positions.len() {
                let d = positions[i].distance(&positions[j]);
                edges.push(Edge::new(i as LandmarkId, j as LandmarkId, d));
            }
        }
        LandmarkGraph::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[Landmark] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, id: LandmarkId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn vertex(&self, id: LandmarkId) -> Option<&Landmark> {
        self.index.get(&id).map(|&i| &self.vertices[i])
    }

    /// Neighbours of `id` with edge lengths, in increasing id order.
    pub fn neighbors(&self, id: LandmarkId) -> impl Iterator<Item = (LandmarkId, f64)> + '_ {
        self.index
            .get(&id)
            .into_iter()
            .flat_map(move |&i| self.adjacency[i].iter())
            .map(move |&(n, len)| (self.vertices[n].id, len))
    }

    pub fn degree(&self, id: LandmarkId) -> usize {
        self.index.get(&id).map_or(0, |&i| self.adjacency[i].len())
    }

    pub fn edge_length(&self, a: LandmarkId, b: LandmarkId) -> Option<f64> {
        let ib = *self.index.get(&b)?;
        let ia = *self.index.get(&a)?;
        self.adjacency[ia]
            .binary_search_by_key(&ib, |&(n, _)| n)
            .ok()
            .map(|pos| self.adjacency[ia][pos].1)
    }

    pub fn straight_distance(&self, a: LandmarkId, b: LandmarkId) -> Option<f64> {
        Some(self.vertex(a)?.position.distance(&self.vertex(b)?.position))
    }

    pub(crate) fn index_of(&self, id: LandmarkId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub(crate) fn adjacency_at(&self, index: usize) -> &[(usize, f64)] {
        &self.adjacency[index]
    }

    /// Component label per vertex index; labels are dense from 0.
    pub(crate) fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for start in 0..self.vertices.len() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(n, _) in &self.adjacency[v] {
                    if label[n] == usize::MAX {
                        label[n] = next;
                        queue.push_back(n);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Re-checks every structural invariant from scratch.
    pub fn validate(&self) -> Result<(), TerrainError> {
        let rebuilt = LandmarkGraph::new(self.vertices.clone(), self.edges.clone())?;
        debug_assert_eq!(rebuilt.edges.len(), self.edges.len());
        Ok(())
    }
}
