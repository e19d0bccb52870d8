use std::cmp::Ordering;

use super::VertexId;
use crate::error::{Error, Result};

/// A directed walk `(v_0, ..., v_k)`.
///
/// `k = 0` is the empty path anchored at `v_0`; its composite map is the
/// identity. Membership in a particular graph is checked separately with
/// [`super::DirectedGraph::check_path`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath(
                "a path needs at least its anchor vertex".into(),
            ));
        }
        Ok(Path { vertices })
    }

    /// The empty path at `anchor`.
    pub fn empty(anchor: VertexId) -> Self {
        Path {
            vertices: vec![anchor],
        }
    }

    /// Single-edge path.
    pub fn edge(u: VertexId, v: VertexId) -> Self {
        Path {
            vertices: vec![u, v],
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    /// True for the empty path (no edges).
    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// `self ∼ other`: walk `self`, then `other`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch {
                end: self.end(),
                start: other.start(),
            });
        }
        let mut vertices = Vec::with_capacity(self.vertices.len() + other.len());
        vertices.extend_from_slice(&self.vertices);
        vertices.extend_from_slice(&other.vertices[1..]);
        Ok(Path { vertices })
    }

    /// `self` extended by one edge to `v`.
    pub fn push(&self, v: VertexId) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.push(v);
        Path { vertices }
    }

    /// Sub-path covering edges `from..to`.
    pub fn slice(&self, from: usize, to: usize) -> Path {
        Path {
            vertices: self.vertices[from..=to].to_vec(),
        }
    }

    /// Order by length first, then lexicographically by vertex ids.
    pub fn cmp_len_lex(&self, other: &Path) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

/// Two paths sharing both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathPair {
    p: Path,
    q: Path,
}

impl PathPair {
    pub fn new(p: Path, q: Path) -> Result<Self> {
        if p.start() != q.start() || p.end() != q.end() {
            return Err(Error::InvalidPathPair(format!(
                "{:?} and {:?} do not share endpoints",
                p.vertices(),
                q.vertices()
            )));
        }
        Ok(PathPair { p, q })
    }

    /// `(cycle, ∅)` anchored at the cycle's start.
    pub fn cycle(cycle: Path) -> Result<Self> {
        let anchor = cycle.start();
        Self::new(cycle, Path::empty(anchor))
    }

    /// `(p, p)`.
    pub fn reflexive(p: Path) -> Self {
        PathPair { q: p.clone(), p }
    }

    pub fn p(&self) -> &Path {
        &self.p
    }

    pub fn q(&self) -> &Path {
        &self.q
    }

    pub fn into_parts(self) -> (Path, Path) {
        (self.p, self.q)
    }

    pub fn start(&self) -> VertexId {
        self.p.start()
    }

    pub fn end(&self) -> VertexId {
        self.p.end()
    }

    /// A closed `p` paired with the empty path at the same vertex.
    pub fn is_cycle_pair(&self) -> bool {
        self.q.is_empty() && self.p.is_closed()
    }

    pub fn is_reflexive(&self) -> bool {
        self.p == self.q
    }

    pub fn swapped(&self) -> PathPair {
        PathPair {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    /// Orientation-free form: the smaller path (by length, then lex) first.
    pub fn normalized(&self) -> PathPair {
        if self.q.cmp_len_lex(&self.p) == Ordering::Less {
            self.swapped()
        } else {
            self.clone()
        }
    }

    /// Longest of the two paths.
    pub fn max_len(&self) -> usize {
        self.p.len().max(self.q.len())
    }
}
