//! Width-2 isometric paths decompositions of maximal planar graphs.
//!
//! The first part is an edge of the outer triangle, the second the remaining
//! outer vertex. Every residual component then lives in a region bounded by
//! a cycle whose vertices lie on exactly two parts; that cycle carries
//! exactly two edges crossing between the parts, each capped by a triangle
//! whose apex is inside the component, and the next part is a shortest path
//! between the two apexes.

use crate::decomp::{Decomposition, Part};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet, INFINITE_DIST};
use crate::planar::embed::{residual_region_walk, PlanarEmbedding};
use std::collections::BTreeMap;

pub fn ipd_maximal_planar(g: &Graph, emb: &PlanarEmbedding) -> Result<Decomposition> {
    let n = g.vertex_count();
    if n < 3 || emb.faces().iter().any(|f| f.len() != 3) {
        return Err(Error::NotMaximal(
            "isometric paths decomposition needs a triangulation".into(),
        ));
    }
    let outer = emb.face(emb.outer_face());
    let (a, b, c) = (outer[0], outer[1], outer[2]);
    // lexicographically least outer edge starts the decomposition
    let mut outer_edges = [[a.min(b), a.max(b)], [b.min(c), b.max(c)], [a.min(c), a.max(c)]];
    outer_edges.sort_unstable();
    let first = outer_edges[0];
    let apex_vertex = [a, b, c]
        .into_iter()
        .find(|&v| v != first[0] && v != first[1])
        .expect("triangle has a third vertex");

    let mut parts: Vec<Part> = vec![
        Part::from_path(vec![first[0], first[1]]),
        Part::from_path(vec![apex_vertex]),
    ];
    let mut placed = VertexSet::from_iter(n, [first[0], first[1], apex_vertex]);
    let mut part_of = vec![usize::MAX; n];
    part_of[first[0] as usize] = 0;
    part_of[first[1] as usize] = 0;
    part_of[apex_vertex as usize] = 1;

    // active regions keyed by the smallest component vertex
    let mut regions: BTreeMap<Vertex, (Vec<Vertex>, Vec<Vertex>)> = BTreeMap::new();
    for comp in g.components(&placed) {
        let walk = residual_region_walk(g, emb, &placed, comp[0])?;
        regions.insert(comp[0], (comp, walk));
    }

    while let Some((_, (comp, cycle))) = regions.pop_first() {
        check_region(&cycle, &part_of)?;
        let comp_set = VertexSet::from_iter(n, comp.iter().copied());
        // the two cycle edges not inside a part, in sorted-pair order
        let mut cross: Vec<(Vertex, Vertex)> = Vec::new();
        for i in 0..cycle.len() {
            let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if part_of[x as usize] != part_of[y as usize] {
                cross.push((x.min(y), x.max(y)));
            } else {
                // same part: must be one of its path edges (isometric paths
                // have no chords)
                let part = &parts[part_of[x as usize]];
                let seq = part.vertices();
                let px = seq.iter().position(|&v| v == x).unwrap();
                let py = seq.iter().position(|&v| v == y).unwrap();
                if px.abs_diff(py) != 1 {
                    return Err(Error::internal(
                        "region cycle uses a chord of an isometric path",
                    ));
                }
            }
        }
        cross.sort_unstable();
        cross.dedup();
        if cross.len() != 2 {
            return Err(Error::internal(format!(
                "region cycle has {} crossing edges, expected 2",
                cross.len()
            )));
        }
        let apexes: Vec<Vertex> = cross
            .iter()
            .map(|&(x, y)| inner_apex(emb, &comp_set, x, y))
            .collect::<Result<_>>()?;
        let (v1, v2) = (apexes[0], apexes[1]);

        let path = shortest_path_in(g, &comp_set, v1, v2)?;
        let part_index = parts.len();
        for &v in &path {
            placed.insert(v);
            part_of[v as usize] = part_index;
        }
        parts.push(Part::from_path(path.clone()));

        let survivors: Vec<Vertex> = comp
            .iter()
            .copied()
            .filter(|&v| !placed.contains(v))
            .collect();
        for fragment in crate::builders::kt::components_within(g, &survivors) {
            let walk = residual_region_walk(g, emb, &placed, fragment[0])?;
            regions.insert(fragment[0], (fragment, walk));
        }
    }

    Decomposition::new(g, parts)
}

/// The region boundary must be a simple cycle over exactly two parts.
fn check_region(cycle: &[Vertex], part_of: &[usize]) -> Result<()> {
    if cycle.len() < 3 {
        return Err(Error::internal("region boundary shorter than a triangle"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &v in cycle {
        if !seen.insert(v) {
            return Err(Error::internal("region boundary revisits a vertex"));
        }
    }
    let mut parts_touched: Vec<usize> = cycle.iter().map(|&v| part_of[v as usize]).collect();
    parts_touched.sort_unstable();
    parts_touched.dedup();
    if parts_touched.len() != 2 {
        return Err(Error::internal(format!(
            "region boundary touches {} parts, expected 2",
            parts_touched.len()
        )));
    }
    Ok(())
}

/// Apex of the face on the component side of edge {x, y}.
fn inner_apex(emb: &PlanarEmbedding, comp: &VertexSet, x: Vertex, y: Vertex) -> Result<Vertex> {
    let (f1, f2) = emb.faces_of_edge(x, y);
    let apex_of = |f: usize| {
        emb.face(f)
            .iter()
            .copied()
            .find(|&v| v != x && v != y)
            .expect("triangular face")
    };
    let candidates: Vec<Vertex> = [f1, f2]
        .into_iter()
        .map(apex_of)
        .filter(|&v| comp.contains(v))
        .collect();
    match candidates.as_slice() {
        [v] => Ok(*v),
        _ => Err(Error::internal(format!(
            "edge ({x}, {y}) has {} apexes inside the region, expected 1",
            candidates.len()
        ))),
    }
}

/// Shortest path between two component vertices inside the component,
/// smallest-id tie-breaks, returned from `from` to `to`.
fn shortest_path_in(g: &Graph, comp: &VertexSet, from: Vertex, to: Vertex) -> Result<Vec<Vertex>> {
    if from == to {
        return Ok(vec![from]);
    }
    let n = g.vertex_count();
    let mut dist = vec![INFINITE_DIST; n];
    dist[from as usize] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if comp.contains(w) && dist[w as usize] == INFINITE_DIST {
                dist[w as usize] = dist[u as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[to as usize] == INFINITE_DIST {
        return Err(Error::internal("apexes are disconnected inside the region"));
    }
    let mut path = vec![to];
    let mut cur = to;
    while dist[cur as usize] > 0 {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| comp.contains(w) && dist[w as usize] + 1 == dist[cur as usize])
            .min()
            .expect("BFS predecessor exists");
        path.push(next);
        cur = next;
    }
    path.reverse();
    Ok(path)
}
