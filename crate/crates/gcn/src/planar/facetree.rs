//! The face-tree ordering of maximal planar graphs: a lexicographic BFS
//! tree S, the tree on faces linked by non-tree edges, and the vertex order
//! obtained by walking that tree depth-first and appending root paths.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::lexbfs::lex_bfs_tree;
use crate::order::LinearOrder;
use crate::planar::embed::PlanarEmbedding;
use crate::tree::Tree;
use std::collections::BTreeMap;

/// The tree whose nodes are the faces of a triangulation, two faces adjacent
/// when they share a primal edge outside the search tree S. Bags are unions
/// of three root paths and form a tree-decomposition.
#[derive(Clone, Debug)]
pub struct FaceTree {
    adj: Vec<Vec<usize>>,
    /// The shared primal edge behind each face-tree edge.
    shared_edge: BTreeMap<(usize, usize), (Vertex, Vertex)>,
}

impl FaceTree {
    pub fn neighbors(&self, face: usize) -> &[usize] {
        &self.adj[face]
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.shared_edge.len()
    }

    pub fn shared_edge(&self, f1: usize, f2: usize) -> Option<(Vertex, Vertex)> {
        self.shared_edge.get(&(f1.min(f2), f1.max(f2))).copied()
    }
}

/// Builds the face tree of a triangulation relative to a spanning tree `s`.
/// The face count and acyclicity are asserted.
pub fn build_face_tree(g: &Graph, emb: &PlanarEmbedding, s: &Tree) -> Result<FaceTree> {
    if emb.faces().iter().any(|f| f.len() != 3) {
        return Err(Error::NotMaximal("face tree needs a triangulation".into()));
    }
    let f = emb.face_count();
    let mut adj = vec![Vec::new(); f];
    let mut shared_edge = BTreeMap::new();
    for (u, v) in g.edges() {
        if s.has_edge(u, v) {
            continue;
        }
        let (f1, f2) = emb.faces_of_edge(u, v);
        if f1 == f2 {
            return Err(Error::internal("edge borders one face twice"));
        }
        adj[f1].push(f2);
        adj[f2].push(f1);
        shared_edge.insert((f1.min(f2), f1.max(f2)), (u, v));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    // tree check: connected with f - 1 edges
    if shared_edge.len() != f - 1 {
        return Err(Error::internal(format!(
            "face graph has {} edges on {} faces",
            shared_edge.len(),
            f
        )));
    }
    let mut seen = vec![false; f];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    if count != f {
        return Err(Error::internal("face graph is disconnected"));
    }
    Ok(FaceTree { adj, shared_edge })
}

/// Everything the planar ordering pipeline produces: the search tree, the
/// face tree, the depth-first face order with parent edges, per-vertex first
/// faces, and the vertex order itself.
#[derive(Clone, Debug)]
pub struct PlanarOrderContext {
    pub search_tree: Tree,
    pub discovery: Vec<Vertex>,
    pub face_tree: FaceTree,
    /// Faces in depth-first preorder, outer face first.
    pub dfs_order: Vec<usize>,
    /// For each face, the primal edge shared with its DFS parent.
    pub parent_edge: Vec<Option<(Vertex, Vertex)>>,
    /// For each vertex, the first face (in DFS order) whose bag contains it.
    pub first_face: Vec<usize>,
    pub order: LinearOrder,
}

impl PlanarOrderContext {
    pub fn bag(&self, face: usize, emb: &PlanarEmbedding) -> Vec<Vertex> {
        let mut bag = Vec::new();
        for &x in emb.face(face) {
            for v in self.search_tree.root_path(x) {
                if !bag.contains(&v) {
                    bag.push(v);
                }
            }
        }
        bag.sort_unstable();
        bag
    }
}

/// Runs the ordering pipeline on a triangulation: lexicographic BFS from
/// `root`, face tree rooted at the outer face, and the derived linear order.
pub fn lexbfs_planar_pipeline(
    g: &Graph,
    emb: &PlanarEmbedding,
    root: Vertex,
) -> Result<PlanarOrderContext> {
    let (search_tree, discovery) = lex_bfs_tree(g, root)?;
    pipeline_with_tree(g, emb, search_tree, discovery)
}

/// The pipeline after the search tree is fixed; used both by the public
/// entry point and by checks that take the tree as input.
pub fn pipeline_with_tree(
    g: &Graph,
    emb: &PlanarEmbedding,
    search_tree: Tree,
    discovery: Vec<Vertex>,
) -> Result<PlanarOrderContext> {
    let n = g.vertex_count();
    let face_tree = build_face_tree(g, emb, &search_tree)?;
    let outer = emb.outer_face();

    let mut position = vec![usize::MAX; n];
    let mut next_pos = 0usize;
    let mut first_face = vec![usize::MAX; n];
    let mut order_path = |path: &[Vertex], position: &mut Vec<usize>| {
        for &v in path {
            if position[v as usize] == usize::MAX {
                position[v as usize] = next_pos;
                next_pos += 1;
            }
        }
    };

    // outer face first: its three root paths in lexicographic order
    let mut outer_paths: Vec<Vec<Vertex>> = emb
        .face(outer)
        .iter()
        .map(|&x| search_tree.root_path(x))
        .collect();
    outer_paths.sort();
    let assign_first_face = |face: usize, emb: &PlanarEmbedding, first_face: &mut Vec<usize>| {
        for &x in emb.face(face) {
            for v in search_tree.root_path(x) {
                if first_face[v as usize] == usize::MAX {
                    first_face[v as usize] = face;
                }
            }
        }
    };
    assign_first_face(outer, emb, &mut first_face);
    for path in &outer_paths {
        order_path(path, &mut position);
    }

    // depth-first over the face tree; at each newly reached face at most one
    // bag path may still contain unordered vertices
    let f = face_tree.node_count();
    let mut dfs_order = Vec::with_capacity(f);
    let mut parent_edge = vec![None; f];
    let mut visited = vec![false; f];
    let mut stack = vec![outer];
    visited[outer] = true;
    while let Some(face) = stack.pop() {
        dfs_order.push(face);
        if face != outer {
            assign_first_face(face, emb, &mut first_face);
            let mut unordered_paths = 0;
            let mut pending: Option<Vec<Vertex>> = None;
            for &x in emb.face(face) {
                let path = search_tree.root_path(x);
                if path.iter().any(|&v| position[v as usize] == usize::MAX) {
                    unordered_paths += 1;
                    pending = Some(path);
                }
            }
            if unordered_paths > 1 {
                return Err(Error::internal(format!(
                    "face {face} reached with {unordered_paths} unordered bag paths"
                )));
            }
            if let Some(path) = pending {
                order_path(&path, &mut position);
            }
        }
        // push children in descending id so the smallest face is visited next
        let mut children: Vec<usize> = face_tree
            .neighbors(face)
            .iter()
            .copied()
            .filter(|&y| !visited[y])
            .collect();
        children.sort_unstable_by(|a, b| b.cmp(a));
        for y in children {
            visited[y] = true;
            parent_edge[y] = face_tree.shared_edge(face, y);
            stack.push(y);
        }
    }
    if next_pos != n {
        return Err(Error::internal(format!(
            "face-tree walk ordered {next_pos} of {n} vertices"
        )));
    }
    let order = LinearOrder::from_positions(position)?;
    Ok(PlanarOrderContext {
        search_tree,
        discovery,
        face_tree,
        dfs_order,
        parent_edge,
        first_face,
        order,
    })
}

/// The order alone.
pub fn lexbfs_planar_order(g: &Graph, emb: &PlanarEmbedding, root: Vertex) -> Result<LinearOrder> {
    Ok(lexbfs_planar_pipeline(g, emb, root)?.order)
}

/// The fundamental cycle of a non-tree edge {x, y} in the search tree:
/// vertex set and edge set.
fn fundamental_cycle(
    s: &Tree,
    x: Vertex,
    y: Vertex,
) -> (Vec<Vertex>, std::collections::BTreeSet<(Vertex, Vertex)>) {
    let px = s.root_path(x);
    let py = s.root_path(y);
    let mut common = 0;
    while common < px.len() && common < py.len() && px[common] == py[common] {
        common += 1;
    }
    let mut vertices: Vec<Vertex> = px[common - 1..].to_vec();
    vertices.extend(py[common..].iter().rev());
    let mut edges = std::collections::BTreeSet::new();
    for w in px[common - 1..].windows(2) {
        edges.insert((w[0].min(w[1]), w[0].max(w[1])));
    }
    for w in py[common - 1..].windows(2) {
        edges.insert((w[0].min(w[1]), w[0].max(w[1])));
    }
    edges.insert((x.min(y), x.max(y)));
    (vertices, edges)
}

/// Vertices strictly inside a cycle: flood-fill faces from the outer face
/// without crossing cycle edges; whatever stays untouched is interior.
fn cycle_interior(
    g: &Graph,
    emb: &PlanarEmbedding,
    cycle_edges: &std::collections::BTreeSet<(Vertex, Vertex)>,
) -> VertexSet {
    let f = emb.face_count();
    let mut outside = vec![false; f];
    let mut stack = vec![emb.outer_face()];
    outside[emb.outer_face()] = true;
    while let Some(face) = stack.pop() {
        let walk = emb.face(face);
        for i in 0..walk.len() {
            let (x, y) = (walk[i], walk[(i + 1) % walk.len()]);
            if cycle_edges.contains(&(x.min(y), x.max(y))) {
                continue;
            }
            let (f1, f2) = emb.faces_of_edge(x, y);
            let other = if f1 == face { f2 } else { f1 };
            if !outside[other] {
                outside[other] = true;
                stack.push(other);
            }
        }
    }
    let n = g.vertex_count();
    let mut interior = VertexSet::new(n);
    for v in g.vertices() {
        interior.insert(v);
    }
    for (face, walk) in emb.faces().iter().enumerate() {
        if outside[face] {
            for &v in walk {
                interior.remove(v);
            }
        }
    }
    interior
}

/// The separation property of the ordering: for every vertex u whose first
/// face is inner, all of that face's bag precedes everything strictly inside
/// the fundamental cycle of the face's parent edge (minus the bag itself).
pub fn check_carord(
    g: &Graph,
    emb: &PlanarEmbedding,
    search_tree: Tree,
    discovery: Vec<Vertex>,
    order: &LinearOrder,
) -> Result<bool> {
    let ctx = pipeline_with_tree(g, emb, search_tree, discovery)?;
    let outer = emb.outer_face();
    // interior and bag bound per face, shared by all vertices with that face
    let mut cache: BTreeMap<usize, (VertexSet, usize)> = BTreeMap::new();
    for u in g.vertices() {
        let face = ctx.first_face[u as usize];
        if face == outer {
            continue;
        }
        let (interior, bag_max) = cache.entry(face).or_insert_with(|| {
            let (x, y) = ctx.parent_edge[face].expect("inner face has a parent edge");
            let (_, cycle_edges) = fundamental_cycle(&ctx.search_tree, x, y);
            let interior = cycle_interior(g, emb, &cycle_edges);
            let bag = ctx.bag(face, emb);
            let bag_max = bag.iter().map(|&v| order.position(v)).max().unwrap_or(0);
            (interior, bag_max)
        });
        let bag = ctx.bag(face, emb);
        let in_bag = VertexSet::from_iter(g.vertex_count(), bag.iter().copied());
        for w in interior.iter() {
            if !in_bag.contains(w) && order.position(w) <= *bag_max {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fine-grained reachability bounds along the ordering: for every vertex u,
/// at most r + 1 strongly r-reachable vertices on its own root path, and for
/// an inner first face at most 2r on each of the two other bag paths (minus
/// the root path), with the whole reachable set inside those three paths.
/// Vertices first seen on the outer face are only held to the 5r + 1 total.
pub fn check_sreach_path_bounds(
    g: &Graph,
    emb: &PlanarEmbedding,
    ctx: &PlanarOrderContext,
    r: u32,
) -> Result<bool> {
    let outer = emb.outer_face();
    for u in g.vertices() {
        let sreach = crate::reach::sreach(g, &ctx.order, u, crate::reach::Radius::Finite(r))?;
        let on = |path: &[Vertex], v: Vertex| path.contains(&v);
        let pu = ctx.search_tree.root_path(u);
        let on_pu = sreach.iter().filter(|&&v| on(&pu, v)).count();
        if on_pu > r as usize + 1 {
            return Ok(false);
        }
        if sreach.len() > 5 * r as usize + 1 {
            return Ok(false);
        }
        let face = ctx.first_face[u as usize];
        if face == outer {
            continue;
        }
        let corners = emb.face(face);
        let paths: Vec<Vec<Vertex>> = corners
            .iter()
            .map(|&x| ctx.search_tree.root_path(x))
            .collect();
        let candidates: Vec<usize> = (0..3).filter(|&i| on(&paths[i], u)).collect();
        if candidates.is_empty() {
            return Ok(false); // u must lie on one of its first bag's paths
        }
        let ok = candidates.iter().any(|&i| {
            let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            let within = sreach
                .iter()
                .all(|&v| on(&pu, v) || others.iter().any(|&j| on(&paths[j], v)));
            within
                && others.iter().all(|&j| {
                    sreach
                        .iter()
                        .filter(|&&v| on(&paths[j], v) && !on(&pu, v))
                        .count()
                        <= 2 * r as usize
                })
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
