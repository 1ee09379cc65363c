//! Flat decompositions: ordered partitions of the vertex set, their width
//! (separating number), f-spread checks, derived vertex orders, and the
//! bound transfer machinery.

use crate::elim::{binomial, treewidth_exact_with_cap};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::order::LinearOrder;
use crate::path::is_isometric_within;
use crate::reach::{cost_of_order, Mode, Radius};
use serde::Serialize;
use std::sync::Arc;

/// One part of a decomposition. The vertex sequence carries the within-part
/// order used when deriving a linear order; constructors that build parts
/// from paths keep the path order, others sort ascending.
#[derive(Clone, Debug)]
pub struct Part {
    vertices: Vec<Vertex>,
    /// Constituent paths, when the builder produced the part as a union of
    /// paths (each stored in traversal order).
    pub paths: Option<Vec<Vec<Vertex>>>,
}

impl Part {
    pub fn from_set(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        Part { vertices, paths: None }
    }

    pub fn from_path(path: Vec<Vertex>) -> Self {
        Part { vertices: path.clone(), paths: Some(vec![path]) }
    }

    pub(crate) fn from_ordered(vertices: Vec<Vertex>, paths: Option<Vec<Vec<Vertex>>>) -> Self {
        Part { vertices, paths }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// An ordered sequence of non-empty, pairwise disjoint vertex sets that
/// partition the vertex set of a graph.
#[derive(Clone, Debug)]
pub struct Decomposition {
    parts: Vec<Part>,
}

impl Decomposition {
    pub fn new(g: &Graph, parts: Vec<Part>) -> Result<Self> {
        let d = Decomposition { parts };
        d.validate(g)?;
        Ok(d)
    }

    pub fn from_vertex_sets(g: &Graph, sets: Vec<Vec<Vertex>>) -> Result<Self> {
        Decomposition::new(g, sets.into_iter().map(Part::from_set).collect())
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        let mut seen = VertexSet::new(n);
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::input(format!("part {i} is empty")));
            }
            for &v in part.vertices() {
                g.check_vertex(v)?;
                if !seen.insert(v) {
                    return Err(Error::input(format!("vertex {v} appears in two parts")));
                }
            }
        }
        if seen.len() != n {
            return Err(Error::input("parts do not cover the vertex set"));
        }
        Ok(())
    }

    /// Indices of parts whose induced subgraph is connected.
    pub fn connected_flags(&self, g: &Graph) -> Vec<bool> {
        self.parts
            .iter()
            .map(|p| g.is_induced_connected(p.vertices()))
            .collect()
    }
}

/// Spread function f: the per-part budget an r-ball may intersect. The
/// constructions of interest are affine in (2r + 1); arbitrary evaluators
/// are accepted for experimentation.
#[derive(Clone)]
pub enum SpreadFunction {
    /// `scale * (2r + 1) + offset`
    Affine { scale: u64, offset: u64 },
    Custom {
        name: String,
        eval: Arc<dyn Fn(u32) -> u64 + Send + Sync>,
    },
}

impl SpreadFunction {
    /// The single-isometric-path budget 2r + 1.
    pub fn isometric_path() -> Self {
        SpreadFunction::Affine { scale: 1, offset: 0 }
    }

    /// Budget for a union of `p` isometric paths.
    pub fn path_union(p: u64) -> Self {
        SpreadFunction::Affine { scale: p, offset: 0 }
    }

    pub fn eval(&self, r: u32) -> u64 {
        match self {
            SpreadFunction::Affine { scale, offset } => scale * (2 * r as u64 + 1) + offset,
            SpreadFunction::Custom { eval, .. } => eval(r),
        }
    }
}

impl std::fmt::Display for SpreadFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpreadFunction::Affine { scale: 1, offset: 0 } => write!(f, "2r+1"),
            SpreadFunction::Affine { scale, offset: 0 } => write!(f, "{scale}(2r+1)"),
            SpreadFunction::Affine { scale, offset } => write!(f, "{scale}(2r+1)+{offset}"),
            SpreadFunction::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

impl std::fmt::Debug for SpreadFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpreadFunction({self})")
    }
}

/// Width of a decomposition with a witness.
#[derive(Clone, Debug, Serialize)]
pub struct WidthReport {
    pub width: usize,
    /// The component attaining the width; absent only when no residual
    /// component ever exists (e.g. a single part covering everything).
    pub witness: Option<WidthWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthWitness {
    /// Number of parts placed when the component appeared.
    pub stage: usize,
    pub component: Vec<Vertex>,
    /// Indices of the earlier parts with an edge into the component.
    pub attached_parts: Vec<usize>,
}

/// The width of a decomposition: the maximum, over all stages and residual
/// components, of the number of distinct earlier parts adjacent to the
/// component. The separating number of a component does not change between
/// its creation and its destruction, so each component is evaluated once,
/// when it appears.
pub fn width(g: &Graph, d: &Decomposition) -> Result<WidthReport> {
    d.validate(g)?;
    let n = g.vertex_count();
    let mut part_of = vec![usize::MAX; n];
    for (i, part) in d.parts().iter().enumerate() {
        for &v in part.vertices() {
            part_of[v as usize] = i;
        }
    }
    let mut removed = VertexSet::new(n);
    let mut report = WidthReport { width: 0, witness: None };
    // components of the current residual; new ones are evaluated on arrival
    let mut live: Vec<Vec<Vertex>> = Vec::new();
    let mut fresh: Vec<Vec<Vertex>> = g.components(&removed);
    for stage in 0..=d.len() {
        for comp in fresh.drain(..) {
            let mut attached: Vec<usize> = Vec::new();
            for &v in &comp {
                for &w in g.neighbors(v) {
                    if removed.contains(w) && !attached.contains(&part_of[w as usize]) {
                        attached.push(part_of[w as usize]);
                    }
                }
            }
            attached.sort_unstable();
            if attached.len() > report.width || report.witness.is_none() {
                report.width = attached.len();
                report.witness = Some(WidthWitness {
                    stage,
                    component: comp.clone(),
                    attached_parts: attached,
                });
            }
            live.push(comp);
        }
        if stage == d.len() {
            break;
        }
        // place the next part and split the components it intersects
        let part = &d.parts()[stage];
        for &v in part.vertices() {
            removed.insert(v);
        }
        let in_part = VertexSet::from_iter(n, part.vertices().iter().copied());
        let mut shattered: Vec<Vec<Vertex>> = Vec::new();
        live.retain(|comp| {
            if comp.iter().any(|&v| in_part.contains(v)) {
                shattered.push(comp.clone());
                false
            } else {
                true
            }
        });
        for comp in shattered {
            let survivors: Vec<Vertex> = comp
                .iter()
                .copied()
                .filter(|&v| !in_part.contains(v))
                .collect();
            if survivors.is_empty() {
                continue;
            }
            fresh.extend(split_components(g, &survivors));
        }
    }
    if n == 0 {
        report.witness = None;
    }
    Ok(report)
}

/// Connected components of the induced subgraph on `candidates`.
fn split_components(g: &Graph, candidates: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut unseen = VertexSet::from_iter(n, candidates.iter().copied());
    let mut out = Vec::new();
    for &start in candidates {
        if !unseen.contains(start) {
            continue;
        }
        let mut comp = vec![start];
        unseen.remove(start);
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

/// A violation of the f-spread condition.
#[derive(Clone, Debug, Serialize)]
pub struct SpreadViolation {
    pub part: usize,
    pub vertex: Vertex,
    pub r: u32,
    pub count: u64,
    pub bound: u64,
}

/// Checks that each part f-spreads on its residual graph: for every part
/// `H_i`, every vertex `v` of `G` minus the earlier parts and every
/// `r <= r_max`, the closed r-ball around `v` meets `H_i` in at most `f(r)`
/// vertices.
pub fn check_f_flat(g: &Graph, d: &Decomposition, f: &SpreadFunction, r_max: u32) -> Result<bool> {
    Ok(first_spread_violation(g, d, f, r_max)?.is_none())
}

/// The default flatness horizon: affine spread budgets outgrow any ball once
/// r exceeds the diameter, so twice the diameter closes the question.
pub fn default_r_max(g: &Graph) -> u32 {
    let mut diameter = 0;
    for v in g.vertices() {
        let dist = g.bfs_distances(v, None, crate::graph::INFINITE_DIST);
        for d in dist {
            if d != crate::graph::INFINITE_DIST {
                diameter = diameter.max(d);
            }
        }
    }
    2 * diameter
}

pub fn first_spread_violation(
    g: &Graph,
    d: &Decomposition,
    f: &SpreadFunction,
    r_max: u32,
) -> Result<Option<SpreadViolation>> {
    per_part_ball_counts(g, d, r_max, |part, v, r, count| {
        let bound = f.eval(r);
        (count > bound).then_some(SpreadViolation { part, vertex: v, r, count, bound })
    })
}

/// The largest observed spread of any part on its residual graph, per radius
/// `0..=r_max`.
pub fn observed_spread(g: &Graph, d: &Decomposition, r_max: u32) -> Result<Vec<u64>> {
    let mut worst = vec![0u64; r_max as usize + 1];
    per_part_ball_counts::<()>(g, d, r_max, |_, _, r, count| {
        worst[r as usize] = worst[r as usize].max(count);
        None
    })?;
    Ok(worst)
}

/// Shared kernel: for every part i and vertex v of the residual graph at
/// stage i, visits `(i, v, r, |ball_r(v) ∩ H_i|)` for r in `0..=r_max`,
/// stopping early if the visitor returns a value. Cost is one truncated BFS
/// per part member.
fn per_part_ball_counts<T>(
    g: &Graph,
    d: &Decomposition,
    r_max: u32,
    mut visit: impl FnMut(usize, Vertex, u32, u64) -> Option<T>,
) -> Result<Option<T>> {
    d.validate(g)?;
    let n = g.vertex_count();
    let stride = r_max as usize + 1;
    let mut removed = VertexSet::new(n);
    let mut counts = vec![0u64; n * stride];
    let mut touched: Vec<usize> = Vec::new();
    for (i, part) in d.parts().iter().enumerate() {
        for &h in part.vertices() {
            let dist = g.bfs_distances(h, Some(&removed), r_max);
            for (v, &dv) in dist.iter().enumerate() {
                if dv <= r_max {
                    let slot = v * stride + dv as usize;
                    if counts[slot] == 0 {
                        touched.push(slot);
                    }
                    counts[slot] += 1;
                }
            }
        }
        let mut verts: Vec<usize> = touched.iter().map(|s| s / stride).collect();
        verts.sort_unstable();
        verts.dedup();
        let mut result = None;
        'outer: for v in verts {
            let mut acc = 0u64;
            for r in 0..=r_max {
                acc += counts[v * stride + r as usize];
                if let Some(t) = visit(i, v as Vertex, r, acc) {
                    result = Some(t);
                    break 'outer;
                }
            }
        }
        for &slot in &touched {
            counts[slot] = 0;
        }
        touched.clear();
        if result.is_some() {
            return Ok(result);
        }
        for &v in part.vertices() {
            removed.insert(v);
        }
    }
    Ok(None)
}

/// How to order vertices inside a part when deriving a linear order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WithinPartRule {
    /// Use the sequence stored in the part (path order for path parts).
    Stored,
    /// Ascending vertex id.
    AscendingId,
}

/// The linear order derived from a decomposition: vertices of earlier parts
/// first, within a part per `rule`.
pub fn order_from_decomposition(d: &Decomposition, rule: WithinPartRule) -> LinearOrder {
    let mut seq = Vec::new();
    for part in d.parts() {
        match rule {
            WithinPartRule::Stored => seq.extend_from_slice(part.vertices()),
            WithinPartRule::AscendingId => {
                let mut vs = part.vertices().to_vec();
                vs.sort_unstable();
                seq.extend(vs);
            }
        }
    }
    LinearOrder::from_sequence(seq).expect("a decomposition partitions the vertex set")
}

/// Strong-colouring bound from an f-flat decomposition of width k:
/// `(k + 1) * f(r)`.
pub fn bound_spd(f: &SpreadFunction, k: usize, r: u32) -> u64 {
    (k as u64 + 1) * f.eval(r)
}

/// Weak-colouring bound from a connected f-flat decomposition of width k:
/// `C(r + k, k) * f(r)`.
pub fn bound_spdwcol(f: &SpreadFunction, k: usize, r: u32) -> u64 {
    let b = binomial(r as u64 + k as u64, k as u64);
    u64::try_from(b).unwrap_or(u64::MAX).saturating_mul(f.eval(r))
}

/// Whether every part, read as its stored vertex sequence, is an isometric
/// path in its residual graph.
pub fn parts_isometric_in_residuals(g: &Graph, d: &Decomposition) -> Result<bool> {
    d.validate(g)?;
    let mut removed = VertexSet::new(g.vertex_count());
    for part in d.parts() {
        let seq = part.vertices();
        if !is_isometric_within(g, seq, &removed)? {
            return Ok(false);
        }
        for &v in seq {
            removed.insert(v);
        }
    }
    Ok(true)
}

/// Certificate report bundling the checks on a decomposition: partition
/// validity, connectivity, width, flatness, the contraction tree-width
/// check, and measured order costs against the transfer bounds.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub spread_function: String,
    pub partition_valid: bool,
    pub all_parts_connected: bool,
    pub first_disconnected_part: Option<usize>,
    pub width: WidthReport,
    pub flatness_pass: bool,
    pub flatness_r_max: u32,
    pub flatness_violation: Option<SpreadViolation>,
    pub contraction: ContractionCheck,
    pub costs: Vec<CostRow>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionCheck {
    pub ran: bool,
    pub skip_reason: Option<String>,
    pub treewidth: Option<usize>,
    pub width_bound: usize,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CostRow {
    pub r: u32,
    pub strong_cost: usize,
    pub strong_bound: u64,
    pub strong_pass: bool,
    /// Weak side only applies to connected decompositions.
    pub weak_cost: Option<usize>,
    pub weak_bound: Option<u64>,
    pub weak_pass: Option<bool>,
}

pub const DEFAULT_CONTRACTION_TW_CAP: usize = 14;

/// Runs the full certificate battery. The contraction check only runs when
/// all parts are connected and the contracted graph fits the exact
/// tree-width capacity.
pub fn certify(
    g: &Graph,
    d: &Decomposition,
    f: &SpreadFunction,
    r_range: std::ops::RangeInclusive<u32>,
) -> Result<CertificateReport> {
    d.validate(g)?;
    let flags = d.connected_flags(g);
    let all_connected = flags.iter().all(|&c| c);
    let first_disconnected = flags.iter().position(|&c| !c);
    let width_report = width(g, d)?;
    let k = width_report.width;
    let r_max = *r_range.end();
    let violation = first_spread_violation(g, d, f, r_max)?;
    let flat = violation.is_none();

    let contraction = if !all_connected {
        ContractionCheck {
            ran: false,
            skip_reason: Some("a part is disconnected".into()),
            treewidth: None,
            width_bound: k,
            pass: None,
        }
    } else if d.len() > DEFAULT_CONTRACTION_TW_CAP {
        ContractionCheck {
            ran: false,
            skip_reason: Some(format!(
                "contracted graph has {} vertices, beyond the exact tree-width capacity",
                d.len()
            )),
            treewidth: None,
            width_bound: k,
            pass: None,
        }
    } else {
        let sets: Vec<Vec<Vertex>> = d.parts().iter().map(|p| p.vertices().to_vec()).collect();
        let contracted = g.contract_parts(&sets)?;
        let tw = treewidth_exact_with_cap(&contracted, DEFAULT_CONTRACTION_TW_CAP)?;
        ContractionCheck {
            ran: true,
            skip_reason: None,
            treewidth: Some(tw),
            width_bound: k,
            pass: Some(tw <= k),
        }
    };

    let order = order_from_decomposition(d, WithinPartRule::Stored);
    let mut costs = Vec::new();
    for r in r_range.clone() {
        let strong_cost = cost_of_order(g, &order, Radius::Finite(r), Mode::Strong);
        let strong_bound = bound_spd(f, k, r);
        let (weak_cost, weak_bound, weak_pass) = if all_connected {
            let wc = cost_of_order(g, &order, Radius::Finite(r), Mode::Weak);
            let wb = bound_spdwcol(f, k, r);
            (Some(wc), Some(wb), Some(wc as u64 <= wb))
        } else {
            (None, None, None)
        };
        costs.push(CostRow {
            r,
            strong_cost,
            strong_bound,
            strong_pass: strong_cost as u64 <= strong_bound,
            weak_cost,
            weak_bound,
            weak_pass,
        });
    }

    let all_pass = all_connected
        && flat
        && contraction.pass.unwrap_or(true)
        && costs
            .iter()
            .all(|c| c.strong_pass && c.weak_pass.unwrap_or(true));
    Ok(CertificateReport {
        spread_function: f.to_string(),
        partition_valid: true,
        all_parts_connected: all_connected,
        first_disconnected_part: first_disconnected,
        width: width_report,
        flatness_pass: flat,
        flatness_r_max: r_max,
        flatness_violation: violation,
        contraction,
        costs,
        all_pass,
    })
}
