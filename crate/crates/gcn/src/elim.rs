//! Fill-in graphs, elimination width, and exact tree-width / tree-depth.
//!
//! Eliminating the vertices of a graph from the largest position of an order
//! downwards, turning each vertex's remaining smaller neighbourhood into a
//! clique, yields the fill-in graph. Its clique number minus one is the
//! elimination width of the order, and tree-width is the minimum elimination
//! width over all orders.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::order::LinearOrder;
use crate::reach::{sreach_sizes, Radius};

pub const DEFAULT_TW_CAP: usize = 16;
pub const DEFAULT_TD_CAP: usize = 16;

/// A graph together with the edges the elimination process added to it.
#[derive(Clone, Debug)]
pub struct FillInGraph {
    graph: Graph,
    added_edges: Vec<(Vertex, Vertex)>,
}

impl FillInGraph {
    /// The chordal supergraph itself.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Edges added on top of the base graph, `(u, v)` with `u < v`, ascending.
    pub fn added_edges(&self) -> &[(Vertex, Vertex)] {
        &self.added_edges
    }
}

/// The fill-in of `g` with respect to `order`, by running the elimination
/// game from the largest vertex of the order downwards: when a vertex is
/// processed, all pairs of its smaller neighbours (in the current graph)
/// become adjacent.
pub fn fill_in(g: &Graph, order: &LinearOrder) -> FillInGraph {
    let n = g.vertex_count();
    let mut adj: Vec<std::collections::BTreeSet<Vertex>> = (0..n)
        .map(|v| g.neighbors(v as Vertex).iter().copied().collect())
        .collect();
    for p in (0..n).rev() {
        let v = order.vertex_at(p);
        let smaller: Vec<Vertex> = adj[v as usize]
            .iter()
            .copied()
            .filter(|&u| order.less(u, v))
            .collect();
        for (i, &a) in smaller.iter().enumerate() {
            for &b in &smaller[i + 1..] {
                adj[a as usize].insert(b);
                adj[b as usize].insert(a);
            }
        }
    }
    let mut edges = Vec::new();
    let mut added = Vec::new();
    for u in 0..n as Vertex {
        for &v in adj[u as usize].iter().filter(|&&v| v > u) {
            edges.push((u, v));
            if !g.has_edge(u, v) {
                added.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("fill-in preserves simplicity");
    FillInGraph { graph, added_edges: added }
}

/// The equivalent reachability form of the fill-in: `v` becomes adjacent to
/// every smaller vertex reachable by a path whose internal vertices are all
/// greater than `v`. Retained as an independent route for cross-checking.
pub fn fill_in_by_reachability(g: &Graph, order: &LinearOrder) -> FillInGraph {
    let n = g.vertex_count();
    let mut edges = std::collections::BTreeSet::new();
    let mut added = Vec::new();
    for v in 0..n as Vertex {
        for u in crate::reach::sreach(g, order, v, Radius::Infinite).expect("valid vertex") {
            if u != v {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    for &(u, v) in &edges {
        if !g.has_edge(u, v) {
            added.push((u, v));
        }
    }
    let graph = Graph::new(n, &edges.into_iter().collect::<Vec<_>>()).expect("simple");
    FillInGraph { graph, added_edges: added }
}

/// Elimination width of an order: the clique number of the fill-in minus one,
/// read off as the maximum back-degree in the fill-in graph.
pub fn elimination_width(g: &Graph, order: &LinearOrder) -> usize {
    let filled = fill_in(g, order);
    g.vertices()
        .map(|v| {
            filled
                .graph()
                .neighbors(v)
                .iter()
                .filter(|&&u| order.less(u, v))
                .count()
        })
        .max()
        .unwrap_or(0)
}

/// Number of vertices outside `through | {v}` that `v` reaches by paths whose
/// internal vertices all lie in `through`: the degree `v` would have if the
/// vertices of `through` had been eliminated.
fn eliminated_degree(g: &Graph, through: &VertexSet, v: Vertex) -> usize {
    let n = g.vertex_count();
    let mut seen = VertexSet::new(n);
    seen.insert(v);
    let mut stack = vec![v];
    let mut count = 0;
    while let Some(x) = stack.pop() {
        for &w in g.neighbors(x) {
            if seen.insert(w) {
                if through.contains(w) {
                    stack.push(w);
                } else {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Exact tree-width by dynamic programming over the set of already-eliminated
/// vertices: eliminating a vertex costs its degree in the partially
/// eliminated graph, and the width of an elimination order is the maximum
/// cost along it.
pub fn treewidth_exact(g: &Graph) -> Result<usize> {
    treewidth_exact_with_cap(g, DEFAULT_TW_CAP)
}

pub fn treewidth_exact_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("tree-width of the empty graph is undefined"));
    }
    if n > cap {
        return Err(Error::Capacity { what: "treewidth_exact", actual: n, limit: cap });
    }
    // best[mask] = minimum over orders eliminating exactly `mask` first of the
    // maximum elimination degree seen so far.
    let full = (1usize << n) - 1;
    let mut best = vec![u32::MAX; full + 1];
    best[0] = 0;
    for mask in 0..=full {
        let reached = best[mask];
        if reached == u32::MAX {
            continue;
        }
        if mask == full {
            break;
        }
        let mut members = VertexSet::new(n);
        let mut m = mask;
        while m != 0 {
            members.insert(m.trailing_zeros());
            m &= m - 1;
        }
        for v in 0..n {
            if mask & (1 << v) != 0 {
                continue;
            }
            let cost = eliminated_degree(g, &members, v as Vertex) as u32;
            let next = mask | (1 << v);
            let candidate = reached.max(cost);
            if candidate < best[next] {
                best[next] = candidate;
            }
        }
    }
    Ok(best[full] as usize)
}

/// Exact tree-depth by the recursive definition: one plus the best vertex
/// deletion on connected graphs, the maximum over components otherwise.
/// Memoised on vertex subsets.
pub fn treedepth_exact(g: &Graph) -> Result<usize> {
    treedepth_exact_with_cap(g, DEFAULT_TD_CAP)
}

pub fn treedepth_exact_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("tree-depth of the empty graph is undefined"));
    }
    if n > cap {
        return Err(Error::Capacity { what: "treedepth_exact", actual: n, limit: cap });
    }
    let mut memo = std::collections::HashMap::new();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(td_rec(g, full, &mut memo) as usize)
}

fn mask_components(g: &Graph, mask: u64) -> Vec<u64> {
    let mut comps = Vec::new();
    let mut left = mask;
    while left != 0 {
        let start = left.trailing_zeros();
        let mut comp = 1u64 << start;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &w in g.neighbors(x) {
                let bit = 1u64 << w;
                if mask & bit != 0 && comp & bit == 0 {
                    comp |= bit;
                    stack.push(w);
                }
            }
        }
        comps.push(comp);
        left &= !comp;
    }
    comps
}

fn td_rec(g: &Graph, mask: u64, memo: &mut std::collections::HashMap<u64, u32>) -> u32 {
    let popcount = mask.count_ones();
    if popcount == 0 {
        return 0;
    }
    if popcount == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let comps = mask_components(g, mask);
    let depth = if comps.len() > 1 {
        comps.into_iter().map(|c| td_rec(g, c, memo)).max().unwrap()
    } else {
        let mut best = u32::MAX;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            let sub = td_rec(g, mask & !(1u64 << v), memo);
            best = best.min(1 + sub);
            if best == 2 {
                break; // a connected graph with an edge cannot do better
            }
        }
        best
    };
    memo.insert(mask, depth);
    depth
}

/// Binomial coefficient, exact in u128 for the sizes in play here.
pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Whether the weakly r-reachable sets of `order` respect the binomial bound
/// `C(r + k, k)` implied by its elimination width `k`.
pub fn check_binomial_bound(g: &Graph, order: &LinearOrder, r: u32) -> bool {
    let k = elimination_width(g, order) as u64;
    let bound = binomial(r as u64 + k, k);
    let max_wreach = crate::reach::wreach_sizes(g, order, Radius::Finite(r))
        .into_iter()
        .max()
        .unwrap_or(0);
    max_wreach as u128 <= bound
}

/// Elimination width equals the largest strong infinite-reachability set
/// minus one; exposed for cross-checking the two routes.
pub fn elimination_width_by_reachability(g: &Graph, order: &LinearOrder) -> usize {
    sreach_sizes(g, order, Radius::Infinite)
        .into_iter()
        .max()
        .map(|s| s - 1)
        .unwrap_or(0)
}
