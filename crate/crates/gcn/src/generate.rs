//! Seeded graph family generators. Identical parameters and seed always
//! produce identical graphs; planar families come with a constructive
//! embedding.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::planar::embed::RotationSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("path needs at least one vertex"));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i as Vertex, i as Vertex + 1)).collect();
    Graph::new(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input("cycle needs at least three vertices"));
    }
    let edges: Vec<_> = (0..n)
        .map(|i| (i as Vertex, ((i + 1) % n) as Vertex))
        .collect();
    Graph::new(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("complete graph needs at least one vertex"));
    }
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// The rows x cols grid with its natural embedding. Vertex (i, j) gets id
/// `i * cols + j`; rotations list east, north, west, south neighbours in
/// counter-clockwise order.
pub fn grid(rows: usize, cols: usize) -> Result<(Graph, RotationSystem)> {
    if rows == 0 || cols == 0 {
        return Err(Error::input("grid needs positive dimensions"));
    }
    let n = rows * cols;
    let id = |i: usize, j: usize| (i * cols + j) as Vertex;
    let mut edges = Vec::new();
    let mut rotation = vec![Vec::new(); n];
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
            let mut rot = Vec::new();
            if j + 1 < cols {
                rot.push(id(i, j + 1)); // east
            }
            if i + 1 < rows {
                rot.push(id(i + 1, j)); // north (drawn upwards)
            }
            if j > 0 {
                rot.push(id(i, j - 1)); // west
            }
            if i > 0 {
                rot.push(id(i - 1, j)); // south
            }
            rotation[id(i, j) as usize] = rot;
        }
    }
    let g = Graph::new(n, &edges)?;
    // the outer face lies left of the westward edge along the bottom row
    let outer_edge = if cols >= 2 {
        Some((id(0, 1), id(0, 0)))
    } else if rows >= 2 {
        Some((id(1, 0), id(0, 0)))
    } else {
        None
    };
    Ok((g, RotationSystem { rotation, outer_edge }))
}

/// Random forest: each vertex beyond the first starts a new tree with
/// probability 0.15, otherwise attaches to a uniform earlier vertex.
pub fn forest(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("forest needs at least one vertex"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n as Vertex {
        if rng.gen_range(0..100) >= 15 {
            let parent = rng.gen_range(0..v);
            edges.push((parent, v));
        }
    }
    Graph::new(n, &edges)
}

/// Random k-tree on n vertices: start from K_{k+1}, then repeatedly attach a
/// new vertex to a uniformly chosen existing k-clique. Tree-width is exactly
/// k and K_{k+2} is excluded as a minor.
pub fn k_tree(k: usize, n: usize, seed: u64) -> Result<Graph> {
    if k == 0 || n < k + 1 {
        return Err(Error::input(format!(
            "k-tree needs k >= 1 and n >= k + 1, got k={k} n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..=k as Vertex {
        for v in u + 1..=k as Vertex {
            edges.push((u, v));
        }
    }
    // all k-subsets of the initial clique
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    let base: Vec<Vertex> = (0..=k as Vertex).collect();
    for skip in 0..=k {
        let mut c = base.clone();
        c.remove(skip);
        cliques.push(c);
    }
    for v in (k + 1) as Vertex..n as Vertex {
        let pick = rng.gen_range(0..cliques.len());
        let host = cliques[pick].clone();
        for &u in &host {
            edges.push((u, v));
        }
        for skip in 0..k {
            let mut c = host.clone();
            c[skip] = v;
            c.sort_unstable();
            cliques.push(c);
        }
    }
    Graph::new(n, &edges)
}

/// Random maximal planar graph: a triangle, then vertices inserted one at a
/// time into a uniformly chosen inner face of the growing triangulation.
/// The outer face stays the initial triangle. Uniformity over all
/// triangulations is not claimed.
pub fn random_maximal_planar(n: usize, seed: u64) -> Result<(Graph, RotationSystem)> {
    if n < 3 {
        return Err(Error::input("maximal planar graph needs at least three vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1), (0, 2), (1, 2)];
    let mut rotation: Vec<Vec<Vertex>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    // inner faces as ccw triangles
    let mut inner_faces: Vec<[Vertex; 3]> = vec![[0, 1, 2]];
    for v in 3..n as Vertex {
        let pick = rng.gen_range(0..inner_faces.len());
        let [a, b, c] = inner_faces.swap_remove(pick);
        // ccw at v matches the face orientation; at each corner the new
        // neighbour slots into the face's angular wedge
        rotation.push(vec![a, b, c]);
        insert_after(&mut rotation[a as usize], b, v);
        insert_after(&mut rotation[b as usize], c, v);
        insert_after(&mut rotation[c as usize], a, v);
        edges.push((a.min(v), a.max(v)));
        edges.push((b.min(v), b.max(v)));
        edges.push((c.min(v), c.max(v)));
        inner_faces.push([a, b, v]);
        inner_faces.push([b, c, v]);
        inner_faces.push([c, a, v]);
    }
    let g = Graph::new(n, &edges)?;
    Ok((g, RotationSystem { rotation, outer_edge: Some((1, 0)) }))
}

fn insert_after(rot: &mut Vec<Vertex>, after: Vertex, v: Vertex) {
    let pos = rot.iter().position(|&x| x == after).expect("neighbour present");
    rot.insert(pos + 1, v);
}

/// Random connected series-parallel instance: a random 2-tree with a portion
/// of its non-tree edges removed. Stays connected and K_4-minor-free.
pub fn series_parallel(n: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::input("series-parallel instance needs at least two vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1)];
    for v in 2..n as Vertex {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, v));
        edges.push((b, v));
    }
    let g = Graph::new(n, &edges)?;
    // drop some non-tree edges, keeping a spanning tree
    let tree = crate::tree::bfs_tree(&g, 0)?;
    let keep: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter(|&(u, v)| tree.has_edge(u, v) || rng.gen_range(0..100) >= 30)
        .collect();
    Graph::new(n, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::embed::{validate_embedding, EmbeddingMode};

    #[test]
    fn grid_3x3_counts() {
        let (g, rot) = grid(3, 3).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        let emb = validate_embedding(&g, &rot, EmbeddingMode::Any).unwrap();
        // 4 unit squares plus the outer face
        assert_eq!(emb.face_count(), 5);
        assert_eq!(emb.face(emb.outer_face()).len(), 8);
    }

    #[test]
    fn grid_edge_cases_embed() {
        for (r, c) in [(1, 1), (1, 5), (4, 1), (2, 2)] {
            let (g, rot) = grid(r, c).unwrap();
            validate_embedding(&g, &rot, EmbeddingMode::Any).unwrap();
        }
    }

    #[test]
    fn k_trees_have_exact_treewidth() {
        for k in [2usize, 3] {
            for seed in 0..4 {
                let g = k_tree(k, 9, seed).unwrap();
                assert_eq!(crate::elim::treewidth_exact(&g).unwrap(), k, "k={k} seed={seed}");
            }
        }
    }

    #[test]
    fn k_trees_exclude_next_clique_minor() {
        for k in [2usize, 3] {
            let g = k_tree(k, 8, 7).unwrap();
            let h = complete(k + 2).unwrap();
            assert!(crate::minor::find_minor(&g, &h).unwrap().is_none());
        }
    }

    #[test]
    fn random_maximal_planar_is_maximal() {
        for seed in 0..5 {
            let (g, rot) = random_maximal_planar(30, seed).unwrap();
            assert_eq!(g.edge_count(), 3 * 30 - 6);
            validate_embedding(&g, &rot, EmbeddingMode::MaximalPlanar).unwrap();
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let (a, _) = random_maximal_planar(40, 11).unwrap();
        let (b, _) = random_maximal_planar(40, 11).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        let f1 = forest(20, 3).unwrap();
        let f2 = forest(20, 3).unwrap();
        assert_eq!(f1.edges().collect::<Vec<_>>(), f2.edges().collect::<Vec<_>>());
    }

    #[test]
    fn forests_are_acyclic() {
        for seed in 0..6 {
            let g = forest(14, seed).unwrap();
            let comps = g.components(&crate::graph::VertexSet::new(14));
            assert_eq!(g.edge_count(), 14 - comps.len());
        }
    }

    #[test]
    fn series_parallel_is_connected_and_k4_free() {
        for seed in 0..5 {
            let g = series_parallel(12, seed).unwrap();
            assert!(g.is_connected());
            let k4 = complete(4).unwrap();
            assert!(crate::minor::find_minor(&g, &k4).unwrap().is_none());
        }
    }
}
