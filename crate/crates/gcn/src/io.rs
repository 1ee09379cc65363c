//! File formats: graph6, whitespace edge lists, vertex orders, decomposition
//! listings and rotation systems.

use crate::decomp::{Decomposition, Part};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::order::LinearOrder;
use crate::planar::embed::RotationSystem;

/// Encodes a graph in header-less graph6: the 6-bit size header followed by
/// the column-wise upper triangle of the adjacency matrix, packed six bits
/// per printable character.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n as Vertex {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                value |= 1 << (5 - k);
            }
        }
        out.push(value + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ascii")
}

/// Decodes a header-less graph6 line (an optional `>>graph6<<` prefix is
/// tolerated).
pub fn from_graph6(line: &str) -> Result<Graph> {
    let line = line.trim().strip_prefix(">>graph6<<").unwrap_or(line.trim());
    let bytes: Vec<u8> = line.bytes().collect();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    for &b in &bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("invalid graph6 byte {b}")));
        }
    }
    let vals: Vec<usize> = bytes.iter().map(|&b| (b - 63) as usize).collect();
    let (n, header) = if vals[0] != 63 {
        (vals[0], 1)
    } else if vals.len() >= 2 && vals[1] != 63 {
        if vals.len() < 4 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        ((vals[1] << 12) | (vals[2] << 6) | vals[3], 4)
    } else {
        if vals.len() < 8 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let mut n = 0usize;
        for &v in &vals[2..8] {
            n = (n << 6) | v;
        }
        (n, 8)
    };
    let need = n * n.saturating_sub(1) / 2;
    let have = (vals.len() - header) * 6;
    if have < need {
        return Err(Error::Parse(format!(
            "graph6 body too short: {have} bits for {need} adjacency bits"
        )));
    }
    let mut edges = Vec::new();
    let mut pos = 0usize;
    for j in 1..n as Vertex {
        for i in 0..j {
            let value = vals[header + pos / 6];
            if value >> (5 - pos % 6) & 1 == 1 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    Graph::new(n, &edges)
}

/// Writes "u v" per line, 0-based, ascending.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses whitespace-separated "u v" lines. The vertex count is one more
/// than the largest id mentioned.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id: Option<Vertex> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("line {}: expected 'u v'", lineno + 1)));
        };
        let u: Vertex = a
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        let v: Vertex = b
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    Graph::new(n, &edges)
}

/// Detects the format of graph input text: edge list when every non-empty
/// line is two integers, graph6 otherwise (digits cannot occur in graph6).
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    let looks_like_edges = text.lines().filter(|l| !l.trim().is_empty()).all(|l| {
        let mut it = l.split_whitespace();
        matches!(
            (it.next().map(|t| t.parse::<Vertex>().is_ok()), it.next().map(|t| t.parse::<Vertex>().is_ok()), it.next()),
            (Some(true), Some(true), None)
        )
    });
    if looks_like_edges && !text.trim().is_empty() {
        from_edge_list(text)
    } else {
        from_graph6(text.lines().find(|l| !l.trim().is_empty()).unwrap_or(""))
    }
}

/// One line of space-separated vertex ids, smallest position first.
pub fn parse_order(text: &str) -> Result<LinearOrder> {
    let mut seq = Vec::new();
    for token in text.split_whitespace() {
        seq.push(
            token
                .parse::<Vertex>()
                .map_err(|e| Error::Parse(format!("bad vertex id {token:?}: {e}")))?,
        );
    }
    LinearOrder::from_sequence(seq)
}

/// One part per line, space-separated vertex ids in sequence order.
pub fn decomposition_to_text(d: &Decomposition) -> String {
    let mut out = String::new();
    for part in d.parts() {
        let ids: Vec<String> = part.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn decomposition_from_text(g: &Graph, text: &str) -> Result<Decomposition> {
    let mut parts = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut vs = Vec::new();
        for token in line.split_whitespace() {
            vs.push(
                token
                    .parse::<Vertex>()
                    .map_err(|e| Error::Parse(format!("bad vertex id {token:?}: {e}")))?,
            );
        }
        parts.push(Part::from_ordered(vs, None));
    }
    Decomposition::new(g, parts)
}

/// Rotation system file: one line `v: u1 u2 ... uk` per vertex giving the
/// counter-clockwise neighbour order, plus an optional `outer: u v` line
/// naming a directed edge whose left face is the outer face.
pub fn rotation_to_text(rot: &RotationSystem) -> String {
    let mut out = String::new();
    if let Some((u, v)) = rot.outer_edge {
        out.push_str(&format!("outer: {u} {v}\n"));
    }
    for (v, list) in rot.rotation.iter().enumerate() {
        let ids: Vec<String> = list.iter().map(|u| u.to_string()).collect();
        out.push_str(&format!("{v}: {}\n", ids.join(" ")));
    }
    out
}

pub fn rotation_from_text(text: &str) -> Result<RotationSystem> {
    let mut entries: Vec<(usize, Vec<Vertex>)> = Vec::new();
    let mut outer_edge = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("line {}: expected 'v: ...'", lineno + 1)))?;
        let ids: Vec<Vertex> = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<Vertex>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        if head.trim() == "outer" {
            if ids.len() != 2 {
                return Err(Error::Parse(format!(
                    "line {}: outer edge needs exactly two ids",
                    lineno + 1
                )));
            }
            outer_edge = Some((ids[0], ids[1]));
        } else {
            let v: usize = head
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            entries.push((v, ids));
        }
    }
    let n = entries.iter().map(|(v, _)| v + 1).max().unwrap_or(0);
    let mut rotation = vec![None; n];
    for (v, ids) in entries {
        if rotation[v].replace(ids).is_some() {
            return Err(Error::Parse(format!("vertex {v} listed twice")));
        }
    }
    let rotation: Vec<Vec<Vertex>> = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| Error::Parse(format!("vertex {v} missing"))))
        .collect::<Result<_>>()?;
    Ok(RotationSystem { rotation, outer_edge })
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

    #[test]
    fn known_graph6_vectors() {
        // 5 vertices, edges 02 04 13 34
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&complete(4)), "C~");
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&p4), "Ch");
    }

    #[test]
    fn graph6_round_trip() {
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let n = 1 + (next() % 70) as usize;
            let mut edges = Vec::new();
            for u in 0..n as Vertex {
                for v in u + 1..n as Vertex {
                    if next() % 100 < 20 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let enc = to_graph6(&g);
            let back = from_graph6(&enc).unwrap();
            assert_eq!(g.edges().collect::<Vec<_>>(), back.edges().collect::<Vec<_>>());
            assert_eq!(g.vertex_count(), back.vertex_count());
        }
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D c").is_err()); // space is below 63
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        let text = to_edge_list(&g);
        let back = from_edge_list(&text).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), back.edges().collect::<Vec<_>>());
    }

    #[test]
    fn auto_detection() {
        assert_eq!(parse_graph_auto("C~").unwrap().edge_count(), 6);
        assert_eq!(parse_graph_auto("0 1\n1 2\n").unwrap().edge_count(), 2);
    }

    #[test]
    fn order_round_trip() {
        let order = LinearOrder::from_sequence(vec![2, 0, 1]).unwrap();
        assert_eq!(parse_order(&order.to_string()).unwrap(), order);
        assert!(parse_order("0 0 1").is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = Decomposition::from_vertex_sets(&g, vec![vec![1, 0], vec![2, 3]]).unwrap();
        let text = decomposition_to_text(&d);
        let back = decomposition_from_text(&g, &text).unwrap();
        assert_eq!(back.parts()[0].vertices(), d.parts()[0].vertices());
        assert_eq!(text, "0 1\n2 3\n");
    }

    #[test]
    fn rotation_round_trip() {
        let rot = RotationSystem {
            rotation: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            outer_edge: Some((1, 0)),
        };
        let text = rotation_to_text(&rot);
        let back = rotation_from_text(&text).unwrap();
        assert_eq!(back.rotation, rot.rotation);
        assert_eq!(back.outer_edge, rot.outer_edge);
    }
}
