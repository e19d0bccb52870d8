//! Directed graphs, paths and the elementary traversals shared by the basis
//! constructions, the oracle and the optimizer.

mod path;
mod search;

use std::collections::HashMap;

pub use path::{Path, PathPair};
pub use search::{
    distances_to, enumerate_paths, enumerate_paths_with_cap, reachable_from, reaching,
    shortest_path, shortest_path_within, DEFAULT_PATH_BUDGET,
};

use crate::error::{Error, Result};

/// Dense vertex identifier, `0..n`.
pub type VertexId = usize;

/// A simple directed graph with deterministic vertex and edge order.
///
/// Vertex ids are interned in first-appearance order and edges keep their
/// first-appearance order. Self-loops are never stored: every vertex carries
/// an implicit identity self-loop, represented by the empty path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    labels: Vec<String>,
    label_index: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), usize>,
    out: Vec<Vec<VertexId>>,
    inc: Vec<Vec<VertexId>>,
}

/// Builds a graph from labelled edges.
///
/// Labels are interned in first-appearance order and duplicate edges are
/// dropped. An explicit `u -> u` edge is rejected.
pub fn build_graph<I, S>(edge_list: I) -> Result<DirectedGraph>
where
    I: IntoIterator<Item = (S, S)>,
    S: AsRef<str>,
{
    let mut labels: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, VertexId> = HashMap::new();
    let mut intern = |s: &str| -> VertexId {
        if let Some(&id) = label_index.get(s) {
            return id;
        }
        let id = labels.len();
        labels.push(s.to_owned());
        label_index.insert(s.to_owned(), id);
        id
    };
    let mut edges = Vec::new();
    for (tail, head) in edge_list {
        let (tail, head) = (tail.as_ref(), head.as_ref());
        if tail.is_empty() || head.is_empty() {
            return Err(Error::InvalidArgument("empty vertex label".into()));
        }
        if tail == head {
            return Err(Error::SelfLoopInput(tail.to_owned()));
        }
        let u = intern(tail);
        let v = intern(head);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    DirectedGraph::with_labels(labels, &edges)
}

impl DirectedGraph {
    /// Graph on vertices `0..n` labelled by their decimal ids.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::with_labels((0..n).map(|v| v.to_string()).collect(), edges)
    }

    /// Graph with explicit labels; `labels[i]` names vertex `i`.
    pub fn with_labels(labels: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = labels.len();
        let mut label_index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate vertex label `{l}`"
                )));
            }
        }
        let mut g = DirectedGraph {
            labels,
            label_index,
            edges: Vec::with_capacity(edges.len()),
            edge_index: HashMap::with_capacity(edges.len()),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
        };
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::SelfLoopInput(g.labels[u].clone()));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Edgeless graph on `0..n`.
    pub fn edgeless(n: usize) -> Self {
        Self::from_edges(n, &[]).expect("edgeless graph is always valid")
    }

    /// Adds `u -> v` unless already present; returns whether it was new.
    /// Callers must ensure `u != v` and both ids are in range.
    pub(crate) fn insert_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(u != v && u < self.vertex_count() && v < self.vertex_count());
        if self.edge_index.contains_key(&(u, v)) {
            return false;
        }
        self.edge_index.insert((u, v), self.edges.len());
        self.edges.push((u, v));
        let pos = self.out[u].binary_search(&v).unwrap_err();
        self.out[u].insert(pos, v);
        let pos = self.inc[v].binary_search(&u).unwrap_err();
        self.inc[v].insert(pos, u);
        true
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    /// Out-neighbours in ascending id order.
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    /// In-neighbours in ascending id order.
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.inc[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index.contains_key(&(u, v))
    }

    /// Position of `u -> v` in [`Self::edges`].
    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edge_index.get(&(u, v)).copied()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.label_index.get(label).copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v < self.vertex_count()
    }

    /// Whether every consecutive vertex pair of `p` is an edge.
    pub fn contains_path(&self, p: &Path) -> bool {
        p.vertices().iter().all(|&v| self.contains_vertex(v))
            && p.edges().all(|(u, v)| self.has_edge(u, v))
    }

    /// Checks `p` against the graph, reporting the offending path on failure.
    pub fn check_path(&self, p: &Path) -> Result<()> {
        if self.contains_path(p) {
            Ok(())
        } else {
            Err(Error::InvalidPath(self.format_path(p)))
        }
    }

    /// Subgraph induced by `vertices` (which must be sorted ascending and
    /// distinct). Local vertex `i` is `vertices[i]`, so relative id order is
    /// preserved and all id-based tie-breaking carries over unchanged.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> DirectedGraph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        DirectedGraph::with_labels(labels, &edges).expect("induced subgraph is well formed")
    }

    /// Weakly connected components, each sorted ascending, ordered by their
    /// smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in self.out[x].iter().chain(self.inc[x].iter()) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// `(a,b,c)` using vertex labels.
    pub fn format_path(&self, p: &Path) -> String {
        let names: Vec<&str> = p
            .vertices()
            .iter()
            .map(|&v| self.labels.get(v).map(String::as_str).unwrap_or("?"))
            .collect();
        format!("({})", names.join(","))
    }

    pub fn format_pair(&self, pair: &PathPair) -> String {
        format!(
            "({}, {})",
            self.format_path(pair.p()),
            self.format_path(pair.q())
        )
    }

    /// Resolves a sequence of labels into a path of this graph.
    pub fn path_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Path> {
        let ids = labels
            .iter()
            .map(|l| {
                self.vertex(l.as_ref())
                    .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Path::new(ids)?;
        self.check_path(&p)?;
        Ok(p)
    }
}
