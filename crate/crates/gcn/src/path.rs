//! Paths in a host graph and isometry (shortest-path) tests.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet, INFINITE_DIST};

/// A path: an ordered sequence of distinct vertices, consecutive pairs
/// adjacent in the host graph it was validated against. Length 0 (a single
/// vertex) is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(host: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        validate_path(host, &vertices)?;
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false // a path always has at least one vertex
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

pub(crate) fn validate_path(host: &Graph, vertices: &[Vertex]) -> Result<()> {
    if vertices.is_empty() {
        return Err(Error::input("a path needs at least one vertex"));
    }
    for &v in vertices {
        host.check_vertex(v)?;
    }
    let mut seen = VertexSet::new(host.vertex_count());
    for &v in vertices {
        if !seen.insert(v) {
            return Err(Error::input(format!("vertex {v} repeats on the path")));
        }
    }
    for pair in vertices.windows(2) {
        if !host.has_edge(pair[0], pair[1]) {
            return Err(Error::input(format!(
                "consecutive vertices {} and {} are not adjacent",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

/// Whether `path` is an isometric path in `g`: a shortest path between its
/// endpoints.
pub fn is_isometric_path(g: &Graph, path: &Path) -> bool {
    let (s, t) = path.endpoints();
    g.dist(s, t) as usize == path.len()
}

/// Isometry of a vertex sequence inside the subgraph of `g` induced by the
/// vertices NOT in `removed`. Errors if the sequence is not a path there.
pub fn is_isometric_within(g: &Graph, vertices: &[Vertex], removed: &VertexSet) -> Result<bool> {
    validate_path(g, vertices)?;
    for &v in vertices {
        if removed.contains(v) {
            return Err(Error::input(format!("path vertex {v} is removed")));
        }
    }
    let s = vertices[0];
    let t = *vertices.last().unwrap();
    let dist = g.bfs_distances(s, Some(removed), INFINITE_DIST);
    Ok(dist[t as usize] as usize == vertices.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .map(|i| (i as Vertex, ((i + 1) % n) as Vertex))
            .collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn validates_structure() {
        let g = cycle(6);
        assert!(Path::new(&g, vec![]).is_err());
        assert!(Path::new(&g, vec![0, 2]).is_err()); // not adjacent
        assert!(Path::new(&g, vec![0, 1, 0]).is_err()); // repeat
        assert!(Path::new(&g, vec![0, 1, 2]).is_ok());
        assert!(Path::new(&g, vec![4]).is_ok()); // length 0
    }

    #[test]
    fn tree_paths_are_isometric() {
        let g = Graph::new(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        // the unique 3-4 path and the unique 4-6 path
        for vs in [vec![3, 1, 4], vec![4, 1, 0, 2, 5, 6]] {
            let p = Path::new(&g, vs).unwrap();
            assert!(is_isometric_path(&g, &p));
        }
    }

    #[test]
    fn cycle_arcs() {
        let g = cycle(6);
        // 4 consecutive vertices: length 3 between antipodal endpoints, isometric
        let arc = Path::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert!(is_isometric_path(&g, &arc));
        // 5-vertex arc: length 4, but the endpoints are at distance 2
        let long = Path::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
        assert!(!is_isometric_path(&g, &long));
    }

    #[test]
    fn isometric_within_residual() {
        let g = cycle(6);
        // remove 5: the long way around becomes the only (hence shortest) path
        let removed = VertexSet::from_iter(6, [5]);
        assert!(is_isometric_within(&g, &[0, 1, 2, 3, 4], &removed).unwrap());
        assert!(is_isometric_within(&g, &[0, 1, 2], &VertexSet::new(6)).unwrap());
        assert!(is_isometric_within(&g, &[0, 5], &removed).is_err());
    }
}
