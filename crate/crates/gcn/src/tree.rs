//! Rooted trees produced by graph traversals.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, INFINITE_DIST};

/// A rooted tree spanning a subset of a host graph's vertices. For
/// breadth-first trees the depth of every vertex equals its distance from the
/// root in the host graph.
#[derive(Clone, Debug)]
pub struct Tree {
    root: Vertex,
    parent: Vec<Option<Vertex>>, // None outside the spanned set and at the root
    depth: Vec<u32>,             // INFINITE_DIST outside the spanned set
}

impl Tree {
    pub(crate) fn new(root: Vertex, parent: Vec<Option<Vertex>>, depth: Vec<u32>) -> Self {
        Tree { root, parent, depth }
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.depth[v as usize] != INFINITE_DIST
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v as usize]
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v as usize]
    }

    /// The tree path from the root to `v`, root first.
    pub fn root_path(&self, v: Vertex) -> Vec<Vertex> {
        debug_assert!(self.contains(v));
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur as usize] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Whether {u, v} is a tree edge.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.parent(u) == Some(v) || self.parent(v) == Some(u)
    }

    pub fn spanned(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.depth.len() as Vertex).filter(|&v| self.contains(v))
    }
}

/// Breadth-first search tree of the component containing `root`. The parent
/// of a vertex is its smallest-id neighbour in the previous level, so the
/// construction is deterministic and every root path is a shortest path.
pub fn bfs_tree(g: &Graph, root: Vertex) -> Result<Tree> {
    bfs_tree_within(g, root, None)
}

/// BFS tree of the component of `root` in the graph minus `removed`.
pub fn bfs_tree_within(
    g: &Graph,
    root: Vertex,
    removed: Option<&crate::graph::VertexSet>,
) -> Result<Tree> {
    g.check_vertex(root)?;
    let depth = g.bfs_distances(root, removed, INFINITE_DIST);
    let mut parent = vec![None; g.vertex_count()];
    for v in g.vertices() {
        let d = depth[v as usize];
        if d == INFINITE_DIST || v == root {
            continue;
        }
        parent[v as usize] = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| depth[u as usize] != INFINITE_DIST && depth[u as usize] + 1 == d);
        if parent[v as usize].is_none() {
            return Err(Error::internal(format!("no parent for vertex {v}")));
        }
    }
    Ok(Tree::new(root, parent, depth))
}
