//! Minor models and a backtracking minor test for desk-scale graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use serde::Serialize;

pub const DEFAULT_MINOR_CAP: usize = 64;

/// A model of a graph `H` in a host graph `G`: one connected branch set per
/// H-vertex, pairwise disjoint, with every H-edge realised either by a direct
/// G-edge between the two branch sets or by an explicitly listed path whose
/// interior avoids all branch sets and all other listed paths.
#[derive(Clone, Debug, Serialize)]
pub struct MinorModel {
    /// Branch set of each H-vertex, indexed by H-vertex id, each ascending.
    pub branch_sets: Vec<Vec<Vertex>>,
    /// Optional edge models: `((i, j), path)` with the path running from a
    /// vertex of branch set `i` to one of branch set `j`.
    pub edge_paths: Vec<((Vertex, Vertex), Vec<Vertex>)>,
}

impl MinorModel {
    pub fn from_branch_sets(branch_sets: Vec<Vec<Vertex>>) -> Self {
        MinorModel { branch_sets, edge_paths: Vec::new() }
    }
}

/// Checks a claimed model of `h` inside `g`. Independent of any search: used
/// to certify models produced elsewhere.
pub fn validate_minor_model(g: &Graph, h: &Graph, model: &MinorModel) -> Result<()> {
    if model.branch_sets.len() != h.vertex_count() {
        return Err(Error::input(format!(
            "model has {} branch sets for {} vertices",
            model.branch_sets.len(),
            h.vertex_count()
        )));
    }
    let n = g.vertex_count();
    let mut used = VertexSet::new(n);
    for (i, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::input(format!("branch set {i} is empty")));
        }
        for &v in set {
            g.check_vertex(v)?;
            if !used.insert(v) {
                return Err(Error::input(format!("vertex {v} used twice")));
            }
        }
        if !g.is_induced_connected(set) {
            return Err(Error::input(format!("branch set {i} is not connected")));
        }
    }
    let path_for = |i: Vertex, j: Vertex| {
        model
            .edge_paths
            .iter()
            .find(|((a, b), _)| (*a, *b) == (i, j) || (*a, *b) == (j, i))
            .map(|(_, p)| p)
    };
    // interiors must avoid branch sets and each other
    let mut interior_used = used.clone();
    for ((i, j), path) in &model.edge_paths {
        if !h.has_edge(*i, *j) {
            return Err(Error::input(format!("path for non-edge ({i}, {j})")));
        }
        crate::path::validate_path(g, path)?;
        for &v in &path[1..path.len() - 1] {
            if !interior_used.insert(v) {
                return Err(Error::input(format!(
                    "path interior vertex {v} collides with the rest of the model"
                )));
            }
        }
    }
    for (i, j) in h.edges() {
        let set_i = &model.branch_sets[i as usize];
        let set_j = &model.branch_sets[j as usize];
        match path_for(i, j) {
            Some(path) => {
                let (s, t) = (path[0], *path.last().unwrap());
                let fwd = set_i.contains(&s) && set_j.contains(&t);
                let bwd = set_j.contains(&s) && set_i.contains(&t);
                if !fwd && !bwd {
                    return Err(Error::input(format!(
                        "path for edge ({i}, {j}) does not join its branch sets"
                    )));
                }
            }
            None => {
                let touches = set_i
                    .iter()
                    .any(|&u| g.neighbors(u).iter().any(|v| set_j.contains(v)));
                if !touches {
                    return Err(Error::input(format!(
                        "edge ({i}, {j}) not realised: no edge between branch sets"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Backtracking search for a model of `h` in `g`: grow one connected branch
/// set per H-vertex, always extending towards an unrealised H-edge. Returns
/// a validated model, or `None` when no model exists.
pub fn find_minor(g: &Graph, h: &Graph) -> Result<Option<MinorModel>> {
    find_minor_with_cap(g, h, DEFAULT_MINOR_CAP)
}

pub fn find_minor_with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<Option<MinorModel>> {
    let n = g.vertex_count();
    let k = h.vertex_count();
    if k == 0 {
        return Err(Error::input("minor test needs a non-empty pattern"));
    }
    if n > cap {
        return Err(Error::Capacity { what: "find_minor", actual: n, limit: cap });
    }
    if n < k || g.edge_count() < h.edge_count() {
        return Ok(None);
    }
    let mut state = SearchState {
        g,
        h,
        assignment: vec![NONE; n],
        sets: vec![Vec::new(); k],
        failed: std::collections::HashSet::new(),
    };
    if state.search() {
        let model = MinorModel::from_branch_sets(
            state
                .sets
                .into_iter()
                .map(|mut s| {
                    s.sort_unstable();
                    s
                })
                .collect(),
        );
        validate_minor_model(g, h, &model)?;
        Ok(Some(model))
    } else {
        Ok(None)
    }
}

const NONE: u8 = u8::MAX;

struct SearchState<'a> {
    g: &'a Graph,
    h: &'a Graph,
    assignment: Vec<u8>, // G-vertex -> H-vertex or NONE
    sets: Vec<Vec<Vertex>>,
    failed: std::collections::HashSet<Vec<u8>>, // assignments proven fruitless
}

impl SearchState<'_> {
    fn edge_realised(&self, i: usize, j: usize) -> bool {
        self.sets[i]
            .iter()
            .any(|&u| self.g.neighbors(u).iter().any(|&w| self.assignment[w as usize] == j as u8))
    }

    /// Free G-vertices adjacent to branch set `i`.
    fn growth_candidates(&self, i: usize) -> Vec<Vertex> {
        let mut out = Vec::new();
        for &u in &self.sets[i] {
            for &w in self.g.neighbors(u) {
                if self.assignment[w as usize] == NONE && !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertices of branch set `i` plus every free vertex reachable from it
    /// through free vertices. Any future extension of set `i` lies inside.
    fn free_reach(&self, i: usize) -> VertexSet {
        let n = self.g.vertex_count();
        let mut seen = VertexSet::new(n);
        let mut stack: Vec<Vertex> = self.sets[i].clone();
        for &v in &stack {
            seen.insert(v);
        }
        while let Some(u) = stack.pop() {
            for &w in self.g.neighbors(u) {
                if self.assignment[w as usize] == NONE && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn search(&mut self) -> bool {
        if self.failed.contains(&self.assignment) {
            return false;
        }
        let done = self.search_uncached();
        if !done {
            self.failed.insert(self.assignment.clone());
        }
        done
    }

    fn search_uncached(&mut self) -> bool {
        // root an empty branch set first; the root must be free-reachable
        // from every already-rooted H-neighbour's branch set
        if let Some(i) = (0..self.sets.len()).find(|&i| self.sets[i].is_empty()) {
            let mut allowed: Option<VertexSet> = None;
            for j in self.h.neighbors(i as Vertex) {
                if self.sets[*j as usize].is_empty() {
                    continue;
                }
                let reach = self.free_reach(*j as usize);
                allowed = Some(match allowed {
                    None => reach,
                    Some(mut a) => {
                        let keep: Vec<Vertex> =
                            a.iter().filter(|&v| reach.contains(v)).collect();
                        a = VertexSet::new(self.g.vertex_count());
                        for v in keep {
                            a.insert(v);
                        }
                        a
                    }
                });
            }
            for v in 0..self.g.vertex_count() as Vertex {
                if self.assignment[v as usize] != NONE {
                    continue;
                }
                if allowed.as_ref().is_some_and(|a| !a.contains(v)) {
                    continue;
                }
                self.place(v, i);
                if self.search() {
                    return true;
                }
                self.unplace(v, i);
            }
            return false;
        }
        // all rooted: find an unrealised H-edge and grow one of its ends
        let missing = self
            .h
            .edges()
            .find(|&(i, j)| !self.edge_realised(i as usize, j as usize));
        let Some((i, j)) = missing else {
            return true; // every H-edge realised
        };
        // the two sets must at least share a free region
        let reach_i = self.free_reach(i as usize);
        if !self.sets[j as usize]
            .iter()
            .any(|&u| self.g.neighbors(u).iter().any(|&w| reach_i.contains(w)))
        {
            return false;
        }
        for end in [i as usize, j as usize] {
            for v in self.growth_candidates(end) {
                self.place(v, end);
                if self.search() {
                    return true;
                }
                self.unplace(v, end);
            }
        }
        false
    }

    fn place(&mut self, v: Vertex, i: usize) {
        self.assignment[v as usize] = i as u8;
        self.sets[i].push(v);
    }

    fn unplace(&mut self, v: Vertex, i: usize) {
        self.assignment[v as usize] = NONE;
        let pos = self.sets[i].iter().position(|&u| u == v).unwrap();
        self.sets[i].remove(pos);
    }
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

    fn petersen() -> Graph {
        let mut edges: Vec<(Vertex, Vertex)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for i in 0..5u32 {
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // pentagram
        }
        Graph::new(10, &edges).unwrap()
    }

    #[test]
    fn k4_in_k4_with_singleton_sets() {
        let g = complete(4);
        let model = find_minor(&g, &complete(4)).unwrap().expect("present");
        assert!(model.branch_sets.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn trees_have_no_k3_minor() {
        let tree = Graph::new(8, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)]).unwrap();
        assert!(find_minor(&tree, &complete(3)).unwrap().is_none());
    }

    #[test]
    fn petersen_contains_k5() {
        let g = petersen();
        let model = find_minor(&g, &complete(5)).unwrap().expect("present");
        validate_minor_model(&g, &complete(5), &model).unwrap();
    }

    #[test]
    fn validator_rejects_bad_models() {
        let g = complete(4);
        let h = complete(3);
        // disconnected branch set
        let bad = MinorModel::from_branch_sets(vec![vec![0], vec![1], vec![2, 3]]);
        assert!(validate_minor_model(&g, &h, &bad).is_ok()); // K4: {2,3} adjacent, fine
        let p = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bad = MinorModel::from_branch_sets(vec![vec![0], vec![1], vec![3]]);
        assert!(validate_minor_model(&p, &h, &bad).is_err());
        let overlapping = MinorModel::from_branch_sets(vec![vec![0], vec![0], vec![2]]);
        assert!(validate_minor_model(&g, &h, &overlapping).is_err());
    }

    #[test]
    fn capacity_guard() {
        let g = complete(5);
        assert!(matches!(
            find_minor_with_cap(&g, &complete(3), 4),
            Err(Error::Capacity { .. })
        ));
    }
}
