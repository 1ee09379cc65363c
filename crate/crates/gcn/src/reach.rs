//! Weak and strong r-reachability with respect to a linear order, and the
//! cost of an order (the inner max of the colouring-number definitions).
//!
//! A vertex `u` is weakly r-reachable from `v` if some u-v path of length at
//! most `r` has `u` as its order-minimum. It is strongly r-reachable if
//! `u <= v` and some such path has all internal vertices greater than `v`.
//! Both sets contain `v` itself.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, INFINITE_DIST};
use crate::order::LinearOrder;

/// Path-length budget: a non-negative integer or unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Radius {
    Finite(u32),
    Infinite,
}

impl Radius {
    /// Concrete hop budget on an n-vertex graph. Paths are simple, so
    /// length n-1 realises the unbounded case.
    pub fn resolve(self, n: usize) -> u32 {
        match self {
            Radius::Finite(r) => r,
            Radius::Infinite => n.saturating_sub(1) as u32,
        }
    }
}

impl From<u32> for Radius {
    fn from(r: u32) -> Self {
        Radius::Finite(r)
    }
}

impl std::fmt::Display for Radius {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Radius {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "oo" => Ok(Radius::Infinite),
            _ => s
                .parse::<u32>()
                .map(Radius::Finite)
                .map_err(|e| Error::Parse(format!("bad radius {s:?}: {e}"))),
        }
    }
}

/// Which reachability notion a cost refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strong,
    Weak,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Strong => write!(f, "strong"),
            Mode::Weak => write!(f, "weak"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(Mode::Strong),
            "weak" => Ok(Mode::Weak),
            _ => Err(Error::Parse(format!("bad mode {s:?}, expected weak|strong"))),
        }
    }
}

/// The weakly r-reachable set from `v`, ascending.
///
/// Dynamic programme over walks: `best[w]` is the largest achievable minimum
/// position over walks from `v` to `w` of the current length budget. A walk
/// whose minimum is below an already-achieved one is dominated, which prunes
/// the path enumeration to O(r * m). A vertex `u` qualifies exactly when a
/// walk reaches it with minimum equal to `u`'s own position; de-looping such
/// a walk yields a path witnessing weak reachability.
pub fn wreach(g: &Graph, order: &LinearOrder, v: Vertex, r: Radius) -> Result<Vec<Vertex>> {
    g.check_vertex(v)?;
    let n = g.vertex_count();
    let hops = r.resolve(n);
    const NONE: i64 = -1;
    let mut best = vec![NONE; n];
    best[v as usize] = order.position(v) as i64;
    let mut frontier = vec![v];
    let mut queued = vec![false; n];
    for _ in 0..hops {
        // relax against the values as of the start of the round, otherwise
        // an improvement could propagate twice within one hop of budget
        let staged: Vec<(Vertex, i64)> =
            frontier.iter().map(|&x| (x, best[x as usize])).collect();
        let mut touched = Vec::new();
        for (x, bx) in staged {
            for &w in g.neighbors(x) {
                let candidate = bx.min(order.position(w) as i64);
                if candidate > best[w as usize] {
                    best[w as usize] = candidate;
                    if !queued[w as usize] {
                        queued[w as usize] = true;
                        touched.push(w);
                    }
                }
            }
        }
        if touched.is_empty() {
            break;
        }
        for &w in &touched {
            queued[w as usize] = false;
        }
        frontier = touched;
    }
    Ok((0..n as Vertex)
        .filter(|&u| best[u as usize] == order.position(u) as i64)
        .collect())
}

/// The strongly r-reachable set from `v`, ascending: `v` plus every `u < v`
/// that some path of length at most `r` with internal vertices greater than
/// `v` connects to `v`.
pub fn sreach(g: &Graph, order: &LinearOrder, v: Vertex, r: Radius) -> Result<Vec<Vertex>> {
    g.check_vertex(v)?;
    let n = g.vertex_count();
    let hops = r.resolve(n);
    let mut result = vec![v];
    if hops == 0 {
        return Ok(result);
    }
    // BFS from v through vertices greater than v only.
    let pv = order.position(v);
    let mut dist = vec![INFINITE_DIST; n];
    dist[v as usize] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        if dist[x as usize] + 1 == hops {
            continue; // internal vertices beyond this depth cannot help
        }
        for &w in g.neighbors(x) {
            if order.position(w) > pv && dist[w as usize] == INFINITE_DIST {
                dist[w as usize] = dist[x as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    for u in 0..n as Vertex {
        if u == v || order.position(u) > pv {
            continue;
        }
        let reachable = g
            .neighbors(u)
            .iter()
            .any(|&w| (w == v || order.position(w) > pv) && dist[w as usize] < hops);
        if reachable {
            result.push(u);
        }
    }
    result.sort_unstable();
    Ok(result)
}

/// Sizes of all weakly r-reachable sets, indexed by vertex. Computed by one
/// truncated BFS per target `u` inside the suffix graph of vertices not
/// before `u`.
pub fn wreach_sizes(g: &Graph, order: &LinearOrder, r: Radius) -> Vec<usize> {
    let n = g.vertex_count();
    let hops = r.resolve(n);
    let mut sizes = vec![0usize; n];
    let mut dist = vec![INFINITE_DIST; n];
    let mut touched: Vec<Vertex> = Vec::new();
    for u in 0..n as Vertex {
        let pu = order.position(u);
        dist[u as usize] = 0;
        touched.push(u);
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            sizes[x as usize] += 1;
            if dist[x as usize] == hops {
                continue;
            }
            for &w in g.neighbors(x) {
                if order.position(w) >= pu && dist[w as usize] == INFINITE_DIST {
                    dist[w as usize] = dist[x as usize] + 1;
                    queue.push_back(w);
                    touched.push(w);
                }
            }
        }
        for &w in &touched {
            dist[w as usize] = INFINITE_DIST;
        }
        touched.clear();
    }
    sizes
}

/// Sizes of all strongly r-reachable sets, indexed by vertex.
pub fn sreach_sizes(g: &Graph, order: &LinearOrder, r: Radius) -> Vec<usize> {
    (0..g.vertex_count() as Vertex)
        .map(|v| sreach(g, order, v, r).expect("vertex in range").len())
        .collect()
}

/// The cost of an order: the maximum size of a (weakly or strongly)
/// r-reachable set over all vertices. Zero for the empty graph. The order
/// must cover exactly the vertex set.
pub fn cost_of_order(g: &Graph, order: &LinearOrder, r: Radius, mode: Mode) -> usize {
    assert_eq!(
        g.vertex_count(),
        order.len(),
        "order length does not match the vertex count"
    );
    let sizes = match mode {
        Mode::Weak => wreach_sizes(g, order, r),
        Mode::Strong => sreach_sizes(g, order, r),
    };
    sizes.into_iter().max().unwrap_or(0)
}
