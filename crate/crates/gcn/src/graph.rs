//! Finite simple undirected graphs with dense vertex ids `0..n`.
//!
//! Graphs are immutable once built. Algorithms that work on residual graphs
//! (a graph minus a set of vertices) take a [`VertexSet`] of removed vertices
//! instead of copying the structure.

use crate::error::{Error, Result};
use crate::order::LinearOrder;

pub type Vertex = u32;

pub const INFINITE_DIST: u32 = u32::MAX;

/// A set of vertices of a graph with a fixed capacity, backed by a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(64)],
            len: 0,
        }
    }

    pub fn from_iter(capacity: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut set = VertexSet::new(capacity);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        let (w, b) = (v as usize / 64, v as usize % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        let (w, b) = (v as usize / 64, v as usize % 64);
        let present = self.words[w] & (1 << b) != 0;
        if present {
            self.words[w] &= !(1 << b);
            self.len -= 1;
        }
        present
    }

    pub fn contains(&self, v: Vertex) -> bool {
        let (w, b) = (v as usize / 64, v as usize % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        let mut len = 0;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
            len += a.count_ones() as usize;
        }
        self.len = len;
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(i as Vertex * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite simple undirected graph. No loops, no parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>, // sorted neighbour lists
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.vertex_count(), self.m, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list, rejecting loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("parallel edge at vertex {v}")));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.adj.len() as Vertex
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as Vertex;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.adj.len() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "unknown vertex id {v} (graph has {} vertices)",
                self.adj.len()
            )))
        }
    }

    /// BFS distances from `source`, restricted to vertices not in `removed`
    /// (when given), capped at `max_dist`. Unreached entries are
    /// [`INFINITE_DIST`].
    pub fn bfs_distances(
        &self,
        source: Vertex,
        removed: Option<&VertexSet>,
        max_dist: u32,
    ) -> Vec<u32> {
        let mut dist = vec![INFINITE_DIST; self.vertex_count()];
        if removed.is_some_and(|r| r.contains(source)) {
            return dist;
        }
        dist[source as usize] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if du == max_dist {
                continue;
            }
            for &w in self.neighbors(u) {
                if dist[w as usize] == INFINITE_DIST
                    && !removed.is_some_and(|r| r.contains(w))
                {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distance between two vertices, or [`INFINITE_DIST`] when disconnected.
    pub fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        self.bfs_distances(u, None, INFINITE_DIST)[v as usize]
    }

    /// The closed `r`-neighbourhood of `v`: all vertices at distance at most
    /// `r`, including `v` itself.
    pub fn closed_neighborhood(&self, v: Vertex, r: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let dist = self.bfs_distances(v, None, r);
        Ok(self
            .vertices()
            .filter(|&u| dist[u as usize] <= r)
            .collect())
    }

    /// Connected components of the graph minus `removed`, each sorted
    /// ascending; components ordered by smallest member.
    pub fn components(&self, removed: &VertexSet) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = removed.clone();
        let mut out = Vec::new();
        for v in 0..n as Vertex {
            if seen.contains(v) {
                continue;
            }
            let mut comp = vec![v];
            seen.insert(v);
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in self.neighbors(u) {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n <= 1 || self.components(&VertexSet::new(n)).len() == 1
    }

    /// Contracts each part to a single vertex. Parts must be a partition of
    /// the vertex set into connected pieces; part `i` becomes vertex `i`.
    pub fn contract_parts(&self, parts: &[Vec<Vertex>]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut owner = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::input(format!("part {i} is empty")));
            }
            for &v in part {
                self.check_vertex(v)?;
                if owner[v as usize] != usize::MAX {
                    return Err(Error::input(format!("vertex {v} in two parts")));
                }
                owner[v as usize] = i;
            }
            if !self.is_induced_connected(part) {
                return Err(Error::input(format!("part {i} is not connected")));
            }
        }
        if owner.iter().any(|&o| o == usize::MAX) {
            return Err(Error::input("parts do not cover the vertex set"));
        }
        let mut quotient_edges = std::collections::BTreeSet::new();
        for (u, v) in self.edges() {
            let (a, b) = (owner[u as usize], owner[v as usize]);
            if a != b {
                quotient_edges.insert((a.min(b) as Vertex, a.max(b) as Vertex));
            }
        }
        Graph::new(parts.len(), &quotient_edges.into_iter().collect::<Vec<_>>())
    }

    /// Whether the subgraph induced by `set` is connected (empty sets count
    /// as connected).
    pub fn is_induced_connected(&self, set: &[Vertex]) -> bool {
        if set.len() <= 1 {
            return true;
        }
        let members = VertexSet::from_iter(self.vertex_count(), set.iter().copied());
        let mut stack = vec![set[0]];
        let mut seen = VertexSet::new(self.vertex_count());
        seen.insert(set[0]);
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if members.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Repeated minimum-degree removal (ties to the smallest id). Returns the
    /// order that places the last-removed vertex first, together with the
    /// degeneracy: under that order every vertex has at most `degeneracy`
    /// neighbours before it.
    pub fn degeneracy_order(&self) -> (LinearOrder, usize) {
        let n = self.vertex_count();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v as Vertex)).collect();
        let mut removed = vec![false; n];
        let mut removal = Vec::with_capacity(n);
        let mut degeneracy = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("vertex left");
            degeneracy = degeneracy.max(deg[v]);
            removed[v] = true;
            removal.push(v as Vertex);
            for &w in self.neighbors(v as Vertex) {
                if !removed[w as usize] {
                    deg[w as usize] -= 1;
                }
            }
        }
        removal.reverse();
        let order = LinearOrder::from_sequence(removal).expect("removal order is a permutation");
        (order, degeneracy)
    }
}
