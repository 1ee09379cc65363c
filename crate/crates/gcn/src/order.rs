//! Linear orders on the vertex set: the object the colouring numbers
//! minimise over.

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// A bijection between vertices and positions `0..n`. Smaller position means
/// smaller in the order.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearOrder {
    pos: Vec<usize>,
    seq: Vec<Vertex>,
}

impl LinearOrder {
    /// Order given as the vertex sequence, smallest position first.
    pub fn from_sequence(seq: Vec<Vertex>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in seq.iter().enumerate() {
            if v as usize >= n {
                return Err(Error::input(format!("vertex {v} out of range")));
            }
            if pos[v as usize] != usize::MAX {
                return Err(Error::input(format!("vertex {v} appears twice")));
            }
            pos[v as usize] = p;
        }
        Ok(LinearOrder { pos, seq })
    }

    /// Order given as positions indexed by vertex.
    pub fn from_positions(pos: Vec<usize>) -> Result<Self> {
        let n = pos.len();
        let mut seq = vec![Vertex::MAX; n];
        for (v, &p) in pos.iter().enumerate() {
            if p >= n {
                return Err(Error::input(format!("position {p} out of range")));
            }
            if seq[p] != Vertex::MAX {
                return Err(Error::input(format!("position {p} used twice")));
            }
            seq[p] = v as Vertex;
        }
        Ok(LinearOrder { pos, seq })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder {
            pos: (0..n).collect(),
            seq: (0..n as Vertex).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v as usize]
    }

    pub fn vertex_at(&self, position: usize) -> Vertex {
        self.seq[position]
    }

    /// The vertex sequence, smallest position first.
    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn less(&self, u: Vertex, v: Vertex) -> bool {
        self.pos[u as usize] < self.pos[v as usize]
    }
}

impl std::fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearOrder{:?}", self.seq)
    }
}

impl std::fmt::Display for LinearOrder {
    /// One line of space-separated vertex ids, smallest position first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.seq {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_and_positions_agree() {
        let order = LinearOrder::from_sequence(vec![2, 0, 1]).unwrap();
        assert_eq!(order.position(2), 0);
        assert_eq!(order.position(1), 2);
        assert_eq!(order.vertex_at(0), 2);
        assert!(order.less(2, 0));
        let same = LinearOrder::from_positions(vec![1, 2, 0]).unwrap();
        assert_eq!(order, same);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(LinearOrder::from_sequence(vec![0, 0, 1]).is_err());
        assert!(LinearOrder::from_sequence(vec![0, 3]).is_err());
        assert!(LinearOrder::from_positions(vec![0, 0]).is_err());
    }

    #[test]
    fn display_is_space_separated() {
        let order = LinearOrder::from_sequence(vec![2, 0, 1]).unwrap();
        assert_eq!(order.to_string(), "2 0 1");
    }
}
