//! Shared oracles for the integration suites: exhaustive path enumeration,
//! union-find components, exhaustive minor labellings, and an enumerator of
//! all small connected graphs up to isomorphism.
//!
//! Each test binary uses a subset of these.
#![allow(dead_code)]

use gcn::graph::{Graph, Vertex};
use gcn::order::LinearOrder;
use std::collections::BTreeSet;

/// Weakly r-reachable set by brute-force enumeration of simple paths.
pub fn wreach_oracle(g: &Graph, order: &LinearOrder, v: Vertex, r: u32) -> BTreeSet<Vertex> {
    let mut result = BTreeSet::new();
    let mut prefix = vec![v];
    let mut on_path = vec![false; g.vertex_count()];
    on_path[v as usize] = true;
    enumerate_paths(g, r, &mut prefix, &mut on_path, &mut |path| {
        let end = *path.last().unwrap();
        if path.iter().all(|&w| !order.less(w, end)) {
            result.insert(end);
        }
    });
    result
}

/// Strongly r-reachable set by brute-force enumeration of simple paths.
pub fn sreach_oracle(g: &Graph, order: &LinearOrder, v: Vertex, r: u32) -> BTreeSet<Vertex> {
    let mut result = BTreeSet::new();
    let mut prefix = vec![v];
    let mut on_path = vec![false; g.vertex_count()];
    on_path[v as usize] = true;
    enumerate_paths(g, r, &mut prefix, &mut on_path, &mut |path| {
        let end = *path.last().unwrap();
        let internals = if path.len() >= 2 { &path[1..path.len() - 1] } else { &[][..] };
        if !order.less(v, end) && internals.iter().all(|&w| order.less(v, w)) {
            result.insert(end);
        }
    });
    result
}

fn enumerate_paths(
    g: &Graph,
    budget: u32,
    prefix: &mut Vec<Vertex>,
    on_path: &mut Vec<bool>,
    visit: &mut impl FnMut(&[Vertex]),
) {
    visit(prefix);
    if budget == 0 {
        return;
    }
    let last = *prefix.last().unwrap();
    for &w in g.neighbors(last) {
        if !on_path[w as usize] {
            on_path[w as usize] = true;
            prefix.push(w);
            enumerate_paths(g, budget - 1, prefix, on_path, visit);
            prefix.pop();
            on_path[w as usize] = false;
        }
    }
}

/// Connected components via union-find.
pub fn components_oracle(g: &Graph, removed: &gcn::VertexSet) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for (u, v) in g.edges() {
        if removed.contains(u) || removed.contains(v) {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
    for v in 0..n as Vertex {
        if !removed.contains(v) {
            let root = find(&mut parent, v as usize);
            groups.entry(root).or_default().push(v);
        }
    }
    let mut out: Vec<Vec<Vertex>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Exhaustive minor oracle: tries every labelling of G's vertices with H's
/// vertices or "unused" and accepts if some labelling is a valid model.
/// Only sensible for very small host graphs.
pub fn minor_oracle(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    let k = h.vertex_count();
    if n == 0 || k == 0 {
        return false;
    }
    let states = (k as u64 + 1).pow(n as u32);
    assert!(states <= 100_000_000, "oracle domain too large");
    'outer: for code in 0..states {
        let mut c = code;
        let mut sets: Vec<Vec<Vertex>> = vec![Vec::new(); k];
        for v in 0..n as Vertex {
            let label = (c % (k as u64 + 1)) as usize;
            c /= k as u64 + 1;
            if label < k {
                sets[label].push(v);
            }
        }
        for set in &sets {
            if set.is_empty() || !g.is_induced_connected(set) {
                continue 'outer;
            }
        }
        for (a, b) in h.edges() {
            let touch = sets[a as usize].iter().any(|&u| {
                g.neighbors(u)
                    .iter()
                    .any(|w| sets[b as usize].contains(w))
            });
            if !touch {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// A tiny deterministic xorshift generator for test instances.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }

    /// G(n, p%) with an optional spanning chain for connectivity.
    pub fn graph(&mut self, n: usize, percent: u64, connect: bool) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                if self.below(100) < percent {
                    edges.push((u, v));
                }
            }
        }
        if connect {
            for v in 1..n as Vertex {
                let u = (self.below(v as u64)) as Vertex;
                edges.push((u, v));
            }
            edges.sort_unstable();
            edges.dedup();
        }
        Graph::new(n, &edges).unwrap()
    }

    pub fn order(&mut self, n: usize) -> LinearOrder {
        let mut seq: Vec<Vertex> = (0..n as Vertex).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            seq.swap(i, j);
        }
        LinearOrder::from_sequence(seq).unwrap()
    }

    /// A random isometric path: a shortest path between a random vertex pair
    /// with randomised predecessor choices.
    pub fn isometric_path(&mut self, g: &Graph) -> Vec<Vertex> {
        let n = g.vertex_count();
        let s = self.below(n as u64) as Vertex;
        let dist = g.bfs_distances(s, None, gcn::graph::INFINITE_DIST);
        let reachable: Vec<Vertex> = (0..n as Vertex)
            .filter(|&v| dist[v as usize] != gcn::graph::INFINITE_DIST)
            .collect();
        let t = reachable[self.below(reachable.len() as u64) as usize];
        let mut path = vec![t];
        let mut cur = t;
        while dist[cur as usize] > 0 {
            let preds: Vec<Vertex> = g
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&w| dist[w as usize] + 1 == dist[cur as usize])
                .collect();
            cur = preds[self.below(preds.len() as u64) as usize];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// All connected graphs on 1..=max_n vertices, one representative per
/// isomorphism class. Canonical form: the maximum adjacency bitstring over
/// all vertex orders that sort a 1-round degree refinement, found by greedy
/// branch and bound. Two graphs share a canonical form exactly when they are
/// isomorphic, since the form is itself an adjacency encoding.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Vec<Graph>> {
    assert!(max_n <= 7, "enumeration meant for tiny graphs");
    let mut per_size = Vec::new();
    for n in 1..=max_n {
        let mut canon_seen = std::collections::HashSet::new();
        let mut reps = Vec::new();
        let bits = n * (n - 1) / 2;
        for code in 0..(1u64 << bits) {
            let rows = decode_rows(code, n);
            if !rows_connected(&rows, n) {
                continue;
            }
            let canon = canonical_code(&rows, n);
            if canon_seen.insert(canon) {
                reps.push(graph_from_rows(&decode_rows(canon, n), n));
            }
        }
        per_size.push(reps);
    }
    per_size
}

fn decode_rows(code: u64, n: usize) -> Vec<u64> {
    let mut rows = vec![0u64; n];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    rows
}

fn encode_rows(rows: &[u64], n: usize) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if rows[i] >> j & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn rows_connected(rows: &[u64], n: usize) -> bool {
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[v] & !seen;
        }
        seen |= next;
        frontier = next;
    }
    seen.count_ones() as usize == n
}

fn graph_from_rows(rows: &[u64], n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rows[i] >> j & 1 == 1 {
                edges.push((i as Vertex, j as Vertex));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Maximum adjacency code over permutations compatible with the refinement
/// classes, by greedy prefix maximisation with tie branching.
fn canonical_code(rows: &[u64], n: usize) -> u64 {
    // refinement colour: (degree, sorted neighbour degrees)
    let degs: Vec<usize> = rows.iter().map(|r| r.count_ones() as usize).collect();
    let mut colors: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = (0..n)
                .filter(|&u| rows[v] >> u & 1 == 1)
                .map(|u| degs[u])
                .collect();
            nd.sort_unstable();
            (degs[v], nd)
        })
        .collect();
    // class of each vertex, ordered by colour value
    let mut palette: Vec<(usize, Vec<usize>)> = colors.clone();
    palette.sort();
    palette.dedup();
    let class: Vec<usize> = colors
        .drain(..)
        .map(|c| palette.binary_search(&c).unwrap())
        .collect();

    let mut best: Option<Vec<u64>> = None; // prefix rows of the best relabelling
    let mut perm = vec![usize::MAX; n]; // new position -> old vertex
    let mut used = vec![false; n];
    fn rec(
        rows: &[u64],
        class: &[usize],
        n: usize,
        pos: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut Option<Vec<u64>>,
    ) {
        if pos == n {
            let relabeled = relabel(rows, perm, n);
            if best.as_ref().is_none_or(|b| relabeled > *b) {
                *best = Some(relabeled);
            }
            return;
        }
        // candidates: unused vertices of the lowest admissible class,
        // maximising adjacency bits towards the placed prefix
        let min_class = (0..n)
            .filter(|&v| !used[v])
            .map(|v| class[v])
            .min()
            .unwrap();
        let mut scored: Vec<(u64, usize)> = (0..n)
            .filter(|&v| !used[v] && class[v] == min_class)
            .map(|v| {
                let mut score = 0u64;
                for p in 0..pos {
                    if rows[v] >> perm[p] & 1 == 1 {
                        score |= 1 << (n - 1 - p);
                    }
                }
                (score, v)
            })
            .collect();
        let top = scored.iter().map(|&(s, _)| s).max().unwrap();
        scored.retain(|&(s, _)| s == top);
        for (_, v) in scored {
            perm[pos] = v;
            used[v] = true;
            rec(rows, class, n, pos + 1, perm, used, best);
            used[v] = false;
        }
    }
    fn relabel(rows: &[u64], perm: &[usize], n: usize) -> Vec<u64> {
        let mut inv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut out = vec![0u64; n];
        for old in 0..n {
            let mut row = 0u64;
            let mut r = rows[old];
            while r != 0 {
                let u = r.trailing_zeros() as usize;
                r &= r - 1;
                row |= 1 << inv[u];
            }
            out[inv[old]] = row;
        }
        out
    }
    rec(rows, &class, n, 0, &mut perm, &mut used, &mut best);
    encode_rows(&best.unwrap(), n)
}
