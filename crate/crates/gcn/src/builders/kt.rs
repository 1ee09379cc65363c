//! Connected flat decompositions for graphs without a K_t minor.
//!
//! The builder peels one part at a time. Every residual component keeps the
//! invariant that its attached parts pairwise touch, forming a complete
//! minor model on at most t - 2 branch sets. A new part is a subtree of a
//! breadth-first tree of the component assembled from at most t - 3 root
//! paths, one per attached part beyond the first. If a component ever sees
//! t - 1 attached parts, contracting the component on top of them exhibits
//! K_t, and the builder returns that model instead.

use crate::decomp::{Decomposition, Part};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::minor::{validate_minor_model, MinorModel};
use crate::tree::bfs_tree_within;
use std::collections::BTreeMap;

/// Result of the builder: a decomposition with per-part path counts, or a
/// certified K_t model.
#[derive(Debug)]
pub enum KtOutcome {
    Flat(KtDecomposition),
    Minor(MinorModel),
}

#[derive(Debug)]
pub struct KtDecomposition {
    pub decomposition: Decomposition,
    /// Number of constituent root paths per part (at most t - 3).
    pub path_counts: Vec<usize>,
}

pub fn kt_flat_decomposition(g: &Graph, t: usize) -> Result<KtOutcome> {
    if t < 4 {
        return Err(Error::input(format!(
            "t must be at least 4 (the spread budget degenerates at t={t})"
        )));
    }
    if g.vertex_count() == 0 {
        return Err(Error::input("decomposition of the empty graph"));
    }
    let n = g.vertex_count();
    let mut placed = VertexSet::new(n);
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Part> = Vec::new();
    let mut path_counts: Vec<usize> = Vec::new();
    // residual components keyed by their smallest vertex
    let mut worklist: BTreeMap<Vertex, Vec<Vertex>> = g
        .components(&placed)
        .into_iter()
        .map(|c| (c[0], c))
        .collect();

    while let Some((_, comp)) = worklist.pop_first() {
        let attached = attached_parts(g, &comp, &placed, &part_of);
        debug_assert!(attached.len() <= t - 2);
        // the attached parts must pairwise touch: together with the
        // component they are a complete minor model
        for (a, &p) in attached.iter().enumerate() {
            for &q in &attached[a + 1..] {
                let touch = parts[p].vertices().iter().any(|&u| {
                    g.neighbors(u)
                        .iter()
                        .any(|&w| parts[q].vertices().binary_search(&w).is_ok())
                });
                if !touch {
                    return Err(Error::internal(format!(
                        "attached parts {p} and {q} share no edge"
                    )));
                }
            }
        }
        let in_comp = VertexSet::from_iter(n, comp.iter().copied());

        let (new_vertices, paths) = if attached.is_empty() {
            let v = comp[0];
            (vec![v], vec![vec![v]])
        } else {
            // root: least component vertex adjacent to the least attached part
            let q1 = attached[0];
            let root = comp
                .iter()
                .copied()
                .find(|&v| {
                    g.neighbors(v)
                        .iter()
                        .any(|&w| placed.contains(w) && part_of[w as usize] == q1)
                })
                .ok_or_else(|| Error::internal("attached part lost its edge"))?;
            let mut outside = placed.clone();
            for v in g.vertices() {
                if !in_comp.contains(v) && !outside.contains(v) {
                    outside.insert(v);
                }
            }
            let tree = bfs_tree_within(g, root, Some(&outside))?;
            let mut union: Vec<Vertex> = vec![root];
            let mut paths: Vec<Vec<Vertex>> = Vec::new();
            for &q in &attached[1..] {
                let target = comp
                    .iter()
                    .copied()
                    .find(|&v| {
                        g.neighbors(v)
                            .iter()
                            .any(|&w| placed.contains(w) && part_of[w as usize] == q)
                    })
                    .ok_or_else(|| Error::internal("attached part lost its edge"))?;
                let path = tree.root_path(target);
                for &v in &path {
                    if !union.contains(&v) {
                        union.push(v);
                    }
                }
                paths.push(path);
            }
            if paths.is_empty() {
                paths.push(vec![root]);
            }
            union.sort_unstable();
            (union, paths)
        };

        let part_index = parts.len();
        for &v in &new_vertices {
            placed.insert(v);
            part_of[v as usize] = part_index;
        }
        debug_assert!(paths.len() <= t - 3);
        parts.push(Part::from_ordered(new_vertices.clone(), Some(paths.clone())));
        path_counts.push(paths.len());

        // split the component and check the invariant on each fragment
        let survivors: Vec<Vertex> = comp
            .iter()
            .copied()
            .filter(|&v| part_of[v as usize] == usize::MAX)
            .collect();
        for fragment in components_within(g, &survivors) {
            let fr_attached = attached_parts(g, &fragment, &placed, &part_of);
            if fr_attached.len() > t - 2 {
                // contracting the fragment on top of its attached parts
                // yields the forbidden complete minor
                let mut branch_sets: Vec<Vec<Vertex>> = fr_attached
                    .iter()
                    .map(|&q| parts[q].vertices().to_vec())
                    .collect();
                branch_sets.push(fragment.clone());
                let kt = crate::generate::complete(branch_sets.len())?;
                let model = MinorModel::from_branch_sets(branch_sets);
                validate_minor_model(g, &kt, &model)?;
                return Ok(KtOutcome::Minor(model));
            }
            worklist.insert(fragment[0], fragment);
        }
    }

    let decomposition = Decomposition::new(g, parts)?;
    Ok(KtOutcome::Flat(KtDecomposition { decomposition, path_counts }))
}

fn attached_parts(
    g: &Graph,
    comp: &[Vertex],
    placed: &VertexSet,
    part_of: &[usize],
) -> Vec<usize> {
    let mut attached = Vec::new();
    for &v in comp {
        for &w in g.neighbors(v) {
            if placed.contains(w) && !attached.contains(&part_of[w as usize]) {
                attached.push(part_of[w as usize]);
            }
        }
    }
    attached.sort_unstable();
    attached
}

/// Connected components of the induced subgraph on `vertices`.
pub(crate) fn components_within(g: &Graph, vertices: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut unseen = VertexSet::from_iter(n, vertices.iter().copied());
    let mut out = Vec::new();
    for &start in vertices {
        if !unseen.contains(start) {
            continue;
        }
        unseen.remove(start);
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &w in g.neighbors(u) {
                if unseen.contains(w) {
                    unseen.remove(w);
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
