use super::{Edge, Landmark, LandmarkGraph, LandmarkId, TerrainError};

/// Rectangular lattice with 4-neighbour edges.
///
/// Landmark `r * cols + c` sits at `(c * spacing, r * spacing)`.
/// The lattice has `rows * cols` vertices and `2 rows cols - rows - cols`
/// edges, all of length `spacing`.
pub fn generate_grid(rows: u32, cols: u32, spacing: f64) -> Result<LandmarkGraph, TerrainError> {
    if rows < 2 || cols < 2 {
        return Err(TerrainError::GridTooSmall { rows, cols });
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(TerrainError::InvalidSpacing(spacing));
    }
    let id = |r: u32, c: u32| LandmarkId::from(r) * LandmarkId::from(cols) + LandmarkId::from(c);

    let mut vertices = Vec::with_capacity((rows * cols) as usize);
    let mut edges = Vec::with_capacity((2 * rows * cols - rows - cols) as usize);
    for r in 0..rows {
        for c in 0..cols {
            vertices.push(Landmark::new(
                id(r, c),
                f64::from(c) * spacing,
                f64::from(r) * spacing,
            ));
            if c + 1 < cols {
                edges.push(Edge::new(id(r, c), id(r, c + 1), spacing));
            }
            if r + 1 < rows {
                edges.push(Edge::new(id(r, c), id(r + 1, c), spacing));
            }
        }
    }
    LandmarkGraph::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_lattice() {
        let g = generate_grid(2, 2, 10.0).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.edges().iter().all(|e| e.length == 10.0));
    }

    #[test]
    fn lattice_counts() {
        for (rows, cols) in [(10, 10), (25, 25), (3, 7)] {
            let g = generate_grid(rows, cols, 50.0).unwrap();
            assert_eq!(g.vertex_count(), (rows * cols) as usize);
            assert_eq!(g.edge_count(), (2 * rows * cols - rows - cols) as usize);
            assert!(g.is_connected());
            assert!(g.edges().iter().all(|e| (e.length - 50.0).abs() < 1e-9));
            g.validate().unwrap();
        }
    }

    #[test]
    fn no_diagonals() {
        let g = generate_grid(3, 3, 1.0).unwrap();
        assert_eq!(g.degree(4), 4);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.edge_length(0, 4), None);
    }

    #[test]
    fn rejects_degenerate_lattices() {
        assert_eq!(
            generate_grid(1, 5, 1.0),
            Err(TerrainError::GridTooSmall { rows: 1, cols: 5 })
        );
        assert_eq!(
            generate_grid(5, 0, 1.0),
            Err(TerrainError::GridTooSmall { rows: 5, cols: 0 })
        );
        assert_eq!(
            generate_grid(2, 2, 0.0),
            Err(TerrainError::InvalidSpacing(0.0))
        );
    }
}
