use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use super::{LandmarkGraph, LandmarkId, TerrainError};

/// Simple path `s = v0, v1, ..., vk = t` along graph edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlightPlan {
    path: Vec<LandmarkId>,
}

impl FlightPlan {
    pub fn new(graph: &LandmarkGraph, path: Vec<LandmarkId>) -> Result<Self, TerrainError> {
        let Some(&first) = path.first() else {
            return Err(TerrainError::EmptyPlan);
        };
        if !graph.contains(first) {
            return Err(TerrainError::UnknownVertex(first));
        }
        let mut seen = HashSet::with_capacity(path.len());
        seen.insert(first);
        for hop in path.windows(2) {
            let (from, to) = (hop[0], hop[1]);
            if !graph.contains(to) {
                return Err(TerrainError::UnknownVertex(to));
            }
            if graph.edge_length(from, to).is_none() {
                return Err(TerrainError::PlanNotAnEdge { from, to });
            }
            if !seen.insert(to) {
                return Err(TerrainError::PlanRepeatsVertex(to));
            }
        }
        Ok(FlightPlan { path })
    }

    pub fn path(&self) -> &[LandmarkId] {
        &self.path
    }

    pub fn source(&self) -> LandmarkId {
        self.path[0]
    }

    pub fn terminal(&self) -> LandmarkId {
        self.path[self.path.len() - 1]
    }

    /// Number of segments `k`.
    pub fn segments(&self) -> usize {
        self.path.len() - 1
    }

    /// Total edge length in metres. The plan must belong to `graph`.
    pub fn length(&self, graph: &LandmarkGraph) -> f64 {
        self.path
            .windows(2)
            .map(|h| {
                graph
                    .edge_length(h[0], h[1])
                    .expect("plan validated against graph")
            })
            .sum()
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Frontier {
    dist: f64,
    index: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn distances_to(graph: &LandmarkGraph, target: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; graph.vertex_count()];
    dist[target] = 0.0;
    let mut heap = BinaryHeap::from([Frontier {
        dist: 0.0,
        index: target,
    }]);
    while let Some(Frontier { dist: d, index }) = heap.pop() {
        if d > dist[index] {
            continue;
        }
        for &(n, len) in graph.adjacency_at(index) {
            let candidate = d + len;
            if candidate < dist[n] {
                dist[n] = candidate;
                heap.push(Frontier {
                    dist: candidate,
                    index: n,
                });
            }
        }
    }
    dist
}

/// Minimum-length path from `s` to `t`.
///
/// Distances to `t` come from Dijkstra; the path is then walked forward from
/// `s`, stepping at each vertex to the smallest-id neighbour that lies on some
/// shortest path. Equal-length alternatives therefore resolve the same way on
/// every run.
pub fn shortest_flight_plan(
    graph: &LandmarkGraph,
    s: LandmarkId,
    t: LandmarkId,
) -> Result<FlightPlan, TerrainError> {
    let si = graph.index_of(s).ok_or(TerrainError::UnknownVertex(s))?;
    let ti = graph.index_of(t).ok_or(TerrainError::UnknownVertex(t))?;
    let dist = distances_to(graph, ti);
    if !dist[si].is_finite() {
        return Err(TerrainError::Unreachable { from: s, to: t });
    }

    let vertices = graph.vertices();
    let mut path = vec![s];
    let mut at = si;
    while at != ti {
        let here = dist[at];
        let tolerance = 1e-9 * here.max(1.0);
        // Adjacency is sorted by id, so the first match is the smallest id.
        let next = graph
            .adjacency_at(at)
            .iter()
            .find(|&&(n, len)| dist[n] < here && (dist[n] + len - here).abs() <= tolerance)
            .map(|&(n, _)| n)
            .expect("a finite distance always has a predecessor on a shortest path");
        path.push(vertices[next].id);
        at = next;
    }
    FlightPlan::new(graph, path)
}

/// Pair of mutually reachable landmarks with the largest straight-line
/// separation, smallest ids first on ties. On a lattice this is the corner
/// pair `(0, rows*cols - 1)`.
pub fn extremal_pair(graph: &LandmarkGraph) -> Option<(LandmarkId, LandmarkId)> {
    let vertices = graph.vertices();
    let first = vertices.first()?;
    let component = graph.components();
    let mut best = (first.id, first.id, -1.0_f64);
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if component[i] != component[j] {
                continue;
            }
            let d = vertices[i].position.distance(&vertices[j].position);
            if d > best.2 {
                best = (vertices[i].id, vertices[j].id, d);
            }
        }
    }
    Some((best.0, best.1))
}
