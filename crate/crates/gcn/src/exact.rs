//! Exact generalised colouring numbers by search over vertex orders.
//!
//! Orders are built from the smallest position upwards. For the strong mode
//! the cost a vertex contributes is fully determined by the set of vertices
//! placed before it, which admits a dynamic programme over subsets. The weak
//! mode needs genuine branch and bound: contributions accumulate on vertices
//! that are still unplaced.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::order::LinearOrder;
use crate::reach::{cost_of_order, Mode, Radius};

pub const DEFAULT_EXACT_CAP: usize = 10;

/// The exact r-colouring (strong) or weak r-colouring number together with a
/// witnessing order: the minimum over all n! orders of [`cost_of_order`].
/// The returned witness is the lexicographically least optimal order.
pub fn exact_gcn(g: &Graph, r: Radius, mode: Mode) -> Result<(usize, LinearOrder)> {
    exact_gcn_with_cap(g, r, mode, DEFAULT_EXACT_CAP)
}

pub fn exact_gcn_with_cap(
    g: &Graph,
    r: Radius,
    mode: Mode,
    cap: usize,
) -> Result<(usize, LinearOrder)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("exact search needs a non-empty graph"));
    }
    if n > cap {
        return Err(Error::Capacity { what: "exact_gcn", actual: n, limit: cap });
    }
    if n > 22 {
        // bitmask representation limit
        return Err(Error::Capacity { what: "exact_gcn", actual: n, limit: 22 });
    }
    match mode {
        Mode::Strong => Ok(exact_strong(g, r)),
        Mode::Weak => Ok(exact_weak(g, r)),
    }
}

/// Strong cost of placing `v` directly after the set `placed`: the size of
/// its strongly r-reachable set, which only depends on that set. BFS from `v`
/// through unplaced vertices; placed vertices adjacent to the search cone are
/// reachable.
fn strong_cost(g: &Graph, placed: usize, v: Vertex, hops: u32) -> u32 {
    let n = g.vertex_count();
    let unplaced = |w: Vertex| placed & (1 << w) == 0 && w != v;
    let mut dist = vec![u32::MAX; n];
    dist[v as usize] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    let mut reach: usize = 1 << v;
    while let Some(x) = queue.pop_front() {
        let dx = dist[x as usize];
        for &w in g.neighbors(x) {
            if placed & (1 << w) != 0 && dx < hops {
                reach |= 1 << w;
            }
            if unplaced(w) && dist[w as usize] == u32::MAX && dx + 1 < hops {
                dist[w as usize] = dx + 1;
                queue.push_back(w);
            }
        }
    }
    reach.count_ones()
}

fn exact_strong(g: &Graph, r: Radius) -> (usize, LinearOrder) {
    let n = g.vertex_count();
    let hops = r.resolve(n);
    let full = (1usize << n) - 1;
    // completion[mask] = best achievable maximum cost over orders that place
    // the remaining vertices after the set `mask`.
    let mut completion = vec![u32::MAX; full + 1];
    completion[full] = 0;
    for mask in (0..full).rev() {
        let mut best = u32::MAX;
        for v in 0..n as Vertex {
            if mask & (1 << v) != 0 {
                continue;
            }
            let cost = strong_cost(g, mask, v, hops);
            let rest = completion[mask | (1 << v)];
            best = best.min(cost.max(rest));
        }
        completion[mask] = best;
    }
    let opt = completion[0];
    // lexicographically least optimal order
    let mut mask = 0usize;
    let mut seq = Vec::with_capacity(n);
    let mut running = 0u32;
    for _ in 0..n {
        for v in 0..n as Vertex {
            if mask & (1 << v) != 0 {
                continue;
            }
            let cost = strong_cost(g, mask, v, hops);
            let next = mask | (1 << v);
            if running.max(cost).max(completion[next]) <= opt {
                mask = next;
                seq.push(v);
                running = running.max(cost);
                break;
            }
        }
    }
    debug_assert_eq!(seq.len(), n);
    (opt as usize, LinearOrder::from_sequence(seq).expect("permutation"))
}

/// For the weak search: vertices of the closed r-ball around `v` in the graph
/// induced by `v` and the unplaced vertices, as a bitmask. These are exactly
/// the vertices whose weak-reachability count `v` increases when placed.
fn ball_mask(g: &Graph, placed: usize, v: Vertex, hops: u32) -> usize {
    let n = g.vertex_count();
    let mut dist = vec![u32::MAX; n];
    dist[v as usize] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    let mut ball = 1usize << v;
    while let Some(x) = queue.pop_front() {
        let dx = dist[x as usize];
        if dx == hops {
            continue;
        }
        for &w in g.neighbors(x) {
            if placed & (1 << w) == 0 && dist[w as usize] == u32::MAX {
                dist[w as usize] = dx + 1;
                ball |= 1 << w;
                queue.push_back(w);
            }
        }
    }
    ball
}

struct WeakSearch<'a> {
    g: &'a Graph,
    n: usize,
    hops: u32,
    best: u32,
    witness: Vec<Vertex>,
}

impl WeakSearch<'_> {
    /// Depth-first over placement prefixes. `counts[w]` = number of already
    /// placed vertices whose suffix r-ball contained `w` (w unplaced); a
    /// vertex's final weak-reachability size is its count at placement time
    /// plus the contributions of later balls that contain it -- accumulated
    /// exactly when those vertices are placed.
    fn run(&mut self, placed: usize, counts: &mut [u32], prefix: &mut Vec<Vertex>, curmax: u32) {
        if prefix.len() == self.n {
            if curmax < self.best {
                self.best = curmax;
                self.witness = prefix.clone();
            }
            return;
        }
        for v in 0..self.n as Vertex {
            if placed & (1 << v) != 0 {
                continue;
            }
            let ball = ball_mask(self.g, placed, v, self.hops);
            let final_v = counts[v as usize] + 1;
            let newmax = curmax.max(final_v);
            if newmax >= self.best {
                continue;
            }
            // bump counts inside the ball; any unplaced vertex already at the
            // bound cannot get cheaper, so prune.
            let mut feasible = true;
            let mut m = ball;
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                counts[w] += 1;
                if w != v as usize && counts[w] + 1 >= self.best {
                    feasible = false;
                }
            }
            if feasible {
                prefix.push(v);
                self.run(placed | (1 << v), counts, prefix, newmax);
                prefix.pop();
            }
            let mut m = ball;
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                counts[w] -= 1;
            }
        }
    }
}

fn exact_weak(g: &Graph, r: Radius) -> (usize, LinearOrder) {
    let n = g.vertex_count();
    let hops = r.resolve(n);
    // a reasonable starting incumbent keeps the search shallow
    let (heuristic, _) = g.degeneracy_order();
    let initial = cost_of_order(g, &heuristic, Radius::Finite(hops), Mode::Weak) as u32;
    let mut search = WeakSearch {
        g,
        n,
        hops,
        best: initial + 1, // strictly-better pruning; the incumbent order itself is a witness
        witness: Vec::new(),
    };
    let mut counts = vec![0u32; n];
    let mut prefix = Vec::with_capacity(n);
    search.run(0, &mut counts, &mut prefix, 0);
    let opt = if search.witness.is_empty() {
        // nothing beat the heuristic order
        initial
    } else {
        search.best
    };
    // lexicographically least witness achieving opt: depth-first trying
    // vertices in ascending id, keeping every finalised cost within opt.
    let mut counts = vec![0u32; n];
    let mut seq = Vec::with_capacity(n);
    let found = lex_weak_witness(g, hops, opt, 0, &mut counts, &mut seq);
    debug_assert!(found);
    (opt as usize, LinearOrder::from_sequence(seq).expect("permutation"))
}

fn lex_weak_witness(
    g: &Graph,
    hops: u32,
    bound: u32,
    placed: usize,
    counts: &mut [u32],
    seq: &mut Vec<Vertex>,
) -> bool {
    let n = g.vertex_count();
    if seq.len() == n {
        return true;
    }
    for v in 0..n as Vertex {
        if placed & (1 << v) != 0 {
            continue;
        }
        if counts[v as usize] + 1 > bound {
            continue;
        }
        let ball = ball_mask(g, placed, v, hops);
        let mut feasible = true;
        let mut m = ball;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            counts[w] += 1;
            if w != v as usize && counts[w] + 1 > bound {
                feasible = false;
            }
        }
        if feasible {
            seq.push(v);
            if lex_weak_witness(g, hops, bound, placed | (1 << v), counts, seq) {
                return true;
            }
            seq.pop();
        }
        let mut m = ball;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            counts[w] -= 1;
        }
    }
    false
}
