//! Combinatorial plane embeddings: rotation systems, face tracing, Euler
//! validation and fan triangulation.
//!
//! Rotations list each vertex's neighbours in counter-clockwise order. Faces
//! are traced with the left-face rule: after entering a vertex along an edge,
//! leave along the previous neighbour in counter-clockwise order. With that
//! convention the face to the left of a directed edge is the orbit
//! containing it.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Raw rotation-system input: one cyclic neighbour list per vertex, plus an
/// optional directed edge whose left face is the outer face.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    pub rotation: Vec<Vec<Vertex>>,
    pub outer_edge: Option<(Vertex, Vertex)>,
}

/// Whether all faces must be triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingMode {
    Any,
    MaximalPlanar,
}

/// A validated plane embedding of a connected graph.
#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<Vertex>>,
    faces: Vec<Vec<Vertex>>, // face walks; faces[f][i] -> faces[f][i+1] are its directed edges
    outer_face: usize,
    rot_index: Vec<std::collections::HashMap<Vertex, usize>>, // position of u in rotation[v]
    face_of_edge: Vec<Vec<usize>>, // face on the left of (v, rotation[v][i])
}

impl PlanarEmbedding {
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v as usize]
    }

    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &[Vertex] {
        &self.faces[id]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    /// The face on the left of the directed edge (u, v).
    pub fn face_left_of(&self, u: Vertex, v: Vertex) -> usize {
        let idx = self.rot_index[u as usize][&v];
        self.face_of_edge[u as usize][idx]
    }

    /// The two faces bordering the undirected edge {u, v}.
    pub fn faces_of_edge(&self, u: Vertex, v: Vertex) -> (usize, usize) {
        (self.face_left_of(u, v), self.face_left_of(v, u))
    }

    /// Previous neighbour of `u` in counter-clockwise order at `v`.
    pub fn prev_neighbor(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.rotation[v as usize];
        let idx = self.rot_index[v as usize][&u];
        rot[(idx + rot.len() - 1) % rot.len()]
    }
}

/// Traces faces from rotations and checks Euler's formula; in maximal mode
/// additionally demands triangular faces and `m = 3n - 6`.
pub fn validate_embedding(
    g: &Graph,
    rot: &RotationSystem,
    mode: EmbeddingMode,
) -> Result<PlanarEmbedding> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::input("embedding validation requires a connected graph"));
    }
    if rot.rotation.len() != n {
        return Err(Error::input(format!(
            "rotation lists {} vertices, graph has {n}",
            rot.rotation.len()
        )));
    }
    for v in g.vertices() {
        let mut listed = rot.rotation[v as usize].clone();
        listed.sort_unstable();
        if listed.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate neighbour in rotation of {v}")));
        }
        if listed != g.neighbors(v) {
            return Err(Error::input(format!(
                "rotation of vertex {v} does not list its neighbours"
            )));
        }
    }
    // special case: a single vertex spans the sphere with one empty face
    if n == 1 {
        return Ok(PlanarEmbedding {
            rotation: rot.rotation.clone(),
            faces: vec![Vec::new()],
            outer_face: 0,
            rot_index: vec![std::collections::HashMap::new()],
            face_of_edge: vec![Vec::new()],
        });
    }
    let rot_index: Vec<std::collections::HashMap<Vertex, usize>> = rot
        .rotation
        .iter()
        .map(|list| list.iter().enumerate().map(|(i, &u)| (u, i)).collect())
        .collect();
    let mut face_of_edge: Vec<Vec<usize>> =
        rot.rotation.iter().map(|list| vec![usize::MAX; list.len()]).collect();
    let mut faces = Vec::new();
    for start_v in g.vertices() {
        for i in 0..rot.rotation[start_v as usize].len() {
            if face_of_edge[start_v as usize][i] != usize::MAX {
                continue;
            }
            let face_id = faces.len();
            let mut walk = Vec::new();
            let (mut u, mut v) = (start_v, rot.rotation[start_v as usize][i]);
            loop {
                let idx = rot_index[u as usize][&v];
                if face_of_edge[u as usize][idx] != usize::MAX {
                    return Err(Error::NotAnEmbedding(
                        "face walk revisits a directed edge".into(),
                    ));
                }
                face_of_edge[u as usize][idx] = face_id;
                walk.push(u);
                // leave v along the neighbour before u in ccw order
                let rot_v = &rot.rotation[v as usize];
                let j = rot_index[v as usize][&u];
                let w = rot_v[(j + rot_v.len() - 1) % rot_v.len()];
                u = v;
                v = w;
                if (u, v) == (start_v, rot.rotation[start_v as usize][i]) {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    let f = faces.len();
    let euler = n as i64 - g.edge_count() as i64 + f as i64;
    if euler != 2 {
        return Err(Error::NotAnEmbedding(format!(
            "Euler check failed: {n} - {} + {f} = {euler}, expected 2",
            g.edge_count()
        )));
    }
    let outer_face = match rot.outer_edge {
        Some((u, v)) => {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.has_edge(u, v) {
                return Err(Error::input(format!("outer edge ({u}, {v}) not in graph")));
            }
            face_of_edge[u as usize][rot_index[u as usize][&v]]
        }
        None => 0,
    };
    if mode == EmbeddingMode::MaximalPlanar {
        if n < 3 {
            return Err(Error::NotMaximal("need at least 3 vertices".into()));
        }
        if g.edge_count() != 3 * n - 6 {
            return Err(Error::NotMaximal(format!(
                "edge count {} differs from 3n - 6 = {}",
                g.edge_count(),
                3 * n - 6
            )));
        }
        if let Some(bad) = faces.iter().position(|w| w.len() != 3) {
            return Err(Error::NotMaximal(format!(
                "face {bad} has {} sides",
                faces[bad].len()
            )));
        }
    }
    Ok(PlanarEmbedding {
        rotation: rot.rotation.clone(),
        faces,
        outer_face,
        rot_index,
        face_of_edge,
    })
}

/// Adds edges until every face is a triangle, fanning from a suitable vertex
/// of each face walk. Original edges and the embedding of the input are
/// preserved; the outer face keeps its identity via a directed boundary edge.
pub fn triangulate(g: &Graph, emb: &PlanarEmbedding) -> Result<(Graph, PlanarEmbedding)> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::input("triangulation needs at least 3 vertices"));
    }
    let mut rotation = emb.rotation.clone();
    let mut present: std::collections::HashSet<(Vertex, Vertex)> =
        g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    // remember one directed edge of the outer face to re-identify it
    let outer_walk = emb.face(emb.outer_face());
    let outer_mark = if outer_walk.len() >= 2 {
        (outer_walk[0], outer_walk[1])
    } else {
        return Err(Error::input("outer face has no boundary edge"));
    };

    // process faces of the original embedding; fans only subdivide a face, so
    // working from the original face list is enough
    for walk in emb.faces() {
        let len = walk.len();
        if len <= 3 {
            continue;
        }
        let mut done = false;
        'starts: for s in 0..len {
            // candidate fan centre walk[s]; chords to walk[s+2..s+len-1]
            let centre = walk[s];
            let targets: Vec<Vertex> = (2..len - 1).map(|d| walk[(s + d) % len]).collect();
            let mut fresh = std::collections::HashSet::new();
            for &t in &targets {
                if t == centre || present.contains(&(centre, t)) || !fresh.insert(t) {
                    continue 'starts;
                }
            }
            // viable: insert chords into the rotations.
            // At the centre the new neighbours slot between walk[s+1] and
            // walk[s-1], in walk order; at each target the centre slots right
            // after the next walk vertex in ccw order.
            let after = walk[(s + 1) % len];
            let pos = rotation[centre as usize]
                .iter()
                .position(|&x| x == after)
                .ok_or_else(|| Error::internal("walk successor missing from rotation"))?;
            for (k, &t) in targets.iter().enumerate() {
                rotation[centre as usize].insert(pos + 1 + k, t);
            }
            for d in 2..len - 1 {
                let t = walk[(s + d) % len];
                let succ = walk[(s + d + 1) % len];
                let pos_t = rotation[t as usize]
                    .iter()
                    .position(|&x| x == succ)
                    .ok_or_else(|| Error::internal("walk successor missing from rotation"))?;
                rotation[t as usize].insert(pos_t + 1, centre);
            }
            for &t in &targets {
                present.insert((centre, t));
                present.insert((t, centre));
            }
            done = true;
            break;
        }
        if !done {
            return Err(Error::input(
                "face cannot be fan-triangulated without parallel edges".to_string(),
            ));
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = present
        .iter()
        .filter(|&&(u, v)| u < v)
        .copied()
        .collect();
    edges.sort_unstable();
    let graph = Graph::new(n, &edges)?;
    let system = RotationSystem { rotation, outer_edge: Some(outer_mark) };
    let embedding = validate_embedding(&graph, &system, EmbeddingMode::MaximalPlanar)?;
    Ok((graph, embedding))
}

/// Boundary walk of the face of the *induced subgraph on `placed`* that
/// contains the residual vertex `probe`. Used by the region bookkeeping of
/// the planar decomposition: the subgraph inherits the embedding, and the
/// walk is traced with the same left-face rule over placed neighbours only.
pub fn residual_region_walk(
    g: &Graph,
    emb: &PlanarEmbedding,
    placed: &VertexSet,
    probe: Vertex,
) -> Result<Vec<Vertex>> {
    debug_assert!(!placed.contains(probe));
    // find an anchor: a placed neighbour of some vertex reachable from probe
    let mut stack = vec![probe];
    let mut seen = VertexSet::new(g.vertex_count());
    seen.insert(probe);
    let mut anchor: Option<(Vertex, Vertex)> = None; // (placed w, residual u)
    'scan: while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if placed.contains(w) {
                anchor = Some((w, u));
                break 'scan;
            }
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    let Some((w, u)) = anchor else {
        return Err(Error::internal("residual component touches no placed vertex"));
    };
    // first placed neighbour clockwise of u at w starts the bounding walk
    let rot = emb.rotation(w);
    let len = rot.len();
    let start_idx = emb.rot_index[w as usize][&u];
    let mut b = None;
    for step in 1..=len {
        let cand = rot[(start_idx + len - step) % len];
        if placed.contains(cand) {
            b = Some(cand);
            break;
        }
    }
    let Some(b) = b else {
        return Err(Error::internal("anchored vertex has no placed neighbour"));
    };
    // trace the left face of (w, b) in the induced subgraph
    let mut walk = Vec::new();
    let (mut x, mut y) = (w, b);
    loop {
        walk.push(x);
        // previous placed neighbour of x in ccw order at y
        let rot_y = emb.rotation(y);
        let ly = rot_y.len();
        let j = emb.rot_index[y as usize][&x];
        let mut z = None;
        for step in 1..=ly {
            let cand = rot_y[(j + ly - step) % ly];
            if placed.contains(cand) {
                z = Some(cand);
                break;
            }
        }
        let z = z.ok_or_else(|| Error::internal("walk vertex lost its placed neighbours"))?;
        x = y;
        y = z;
        if (x, y) == (w, b) {
            break;
        }
        if walk.len() > 4 * g.edge_count() + 4 {
            return Err(Error::internal("region walk does not close"));
        }
    }
    Ok(walk)
}
