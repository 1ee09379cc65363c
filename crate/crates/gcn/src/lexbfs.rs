//! Lexicographic breadth-first search via partition refinement.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::tree::Tree;

/// Lexicographic BFS from `root` on a connected graph. Returns the search
/// tree and the discovery order.
///
/// Ties are always broken towards the smallest vertex id. The parent of a
/// vertex is its earliest-discovered neighbour in the previous level.
pub fn lex_bfs_tree(g: &Graph, root: Vertex) -> Result<(Tree, Vec<Vertex>)> {
    g.check_vertex(root)?;
    if !g.is_connected() {
        return Err(Error::input("lexicographic BFS requires a connected graph"));
    }
    let order = lex_bfs_order(g, root);
    let n = g.vertex_count();
    let mut discovery = vec![usize::MAX; n];
    for (t, &v) in order.iter().enumerate() {
        discovery[v as usize] = t;
    }
    let depth = g.bfs_distances(root, None, crate::graph::INFINITE_DIST);
    let mut parent = vec![None; n];
    for &v in &order {
        if v == root {
            continue;
        }
        parent[v as usize] = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| depth[u as usize] + 1 == depth[v as usize])
            .min_by_key(|&u| discovery[u as usize]);
        if parent[v as usize].is_none() {
            return Err(Error::internal(format!("no parent for vertex {v}")));
        }
    }
    Ok((Tree::new(root, parent, depth), order))
}

/// The discovery order alone. Partition refinement: visit the front vertex of
/// the front class, then split every class into (neighbours, rest) keeping
/// the neighbour half in front.
pub fn lex_bfs_order(g: &Graph, root: Vertex) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut classes: Vec<Vec<Vertex>> = Vec::with_capacity(2);
    classes.push(vec![root]);
    let rest: Vec<Vertex> = (0..n as Vertex).filter(|&v| v != root).collect();
    if !rest.is_empty() {
        classes.push(rest);
    }
    let mut order = Vec::with_capacity(n);
    let mut in_nbrs = VertexSet::new(n);
    while let Some(front) = classes.first_mut() {
        let v = front.remove(0);
        if front.is_empty() {
            classes.remove(0);
        }
        order.push(v);
        for &w in g.neighbors(v) {
            in_nbrs.insert(w);
        }
        let mut refined = Vec::with_capacity(classes.len());
        for class in classes.drain(..) {
            let (hit, miss): (Vec<_>, Vec<_>) =
                class.into_iter().partition(|&w| in_nbrs.contains(w));
            if !hit.is_empty() {
                refined.push(hit);
            }
            if !miss.is_empty() {
                refined.push(miss);
            }
        }
        classes = refined;
        for &w in g.neighbors(v) {
            in_nbrs.remove(w);
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i as Vertex, i as Vertex + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    /// Reference implementation with explicit labels: each undiscovered vertex
    /// carries the list of discovery times of its discovered neighbours
    /// (encoded so that earlier discovery compares greater), and the
    /// lexicographically greatest label wins, ties to the smallest id.
    fn naive_lex_bfs(g: &Graph, root: Vertex) -> Vec<Vertex> {
        let n = g.vertex_count();
        let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut visited = vec![false; n];
        let mut order = Vec::new();
        let mut pick = root;
        for t in 0..n {
            let v = pick;
            visited[v as usize] = true;
            order.push(v);
            for &w in g.neighbors(v) {
                if !visited[w as usize] {
                    labels[w as usize].push(n - t); // larger value = earlier time
                }
            }
            if t + 1 == n {
                break;
            }
            pick = (0..n as Vertex)
                .filter(|&w| !visited[w as usize])
                .max_by(|&a, &b| {
                    labels[a as usize]
                        .cmp(&labels[b as usize])
                        .then(b.cmp(&a)) // smaller id wins ties
                })
                .unwrap();
        }
        order
    }

    #[test]
    fn complete_graph_order_is_deterministic() {
        let g = complete(5);
        let (tree, order) = lex_bfs_tree(&g, 2).unwrap();
        assert_eq!(order, vec![2, 0, 1, 3, 4]);
        for v in [0u32, 1, 3, 4] {
            assert_eq!(tree.depth(v), 1);
            assert_eq!(tree.parent(v), Some(2));
        }
    }

    #[test]
    fn path_from_end_is_the_path() {
        let g = path(6);
        let (tree, order) = lex_bfs_tree(&g, 0).unwrap();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
        for v in 1..6u32 {
            assert_eq!(tree.parent(v), Some(v - 1));
        }
    }

    #[test]
    fn matches_naive_label_implementation() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = 2 + (next() % 9) as usize;
            let mut edges = Vec::new();
            for u in 0..n as Vertex {
                for v in u + 1..n as Vertex {
                    if next() % 100 < 40 {
                        edges.push((u, v));
                    }
                }
            }
            for v in 1..n as Vertex {
                edges.push((next() as Vertex % v, v));
            }
            edges.sort_unstable();
            edges.dedup();
            let g = Graph::new(n, &edges).unwrap();
            let root = (next() % n as u64) as Vertex;
            assert_eq!(lex_bfs_order(&g, root), naive_lex_bfs(&g, root));
        }
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(lex_bfs_tree(&g, 0).is_err());
    }
}
