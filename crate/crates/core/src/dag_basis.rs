//! Path-invariance basis of a DAG by ordered edge insertion.
//!
//! Edges are inserted into an initially edgeless copy of the graph, ordered
//! by the topological position of their head (then of their tail). Before an
//! edge `(u, v)` is inserted, every minimal vertex `w` that already reaches
//! both `u` and `v` contributes the pair `(w ~> v, (w ~> u) + (u, v))`, the
//! two paths being shortest paths in the partial graph.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::basis::{Basis, Provenance};
use crate::error::{Error, Result};
use crate::graph::{reaching, shortest_path, DirectedGraph, PathPair, VertexId};

/// A bijection between positions `0..n` and vertices consistent with every
/// edge orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalOrder {
    order: Vec<VertexId>,
    position: Vec<usize>,
}

impl TopologicalOrder {
    /// Validates `order` against `dag`.
    pub fn from_order(dag: &DirectedGraph, order: Vec<VertexId>) -> Result<Self> {
        let n = dag.vertex_count();
        if order.len() != n {
            return Err(Error::InvalidArgument(format!(
                "order has {} entries for {} vertices",
                order.len(),
                n
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::InvalidArgument("order is not a permutation".into()));
            }
            position[v] = i;
        }
        if dag.edges().iter().any(|&(u, v)| position[u] > position[v]) {
            return Err(Error::InvalidArgument("order contradicts an edge".into()));
        }
        Ok(TopologicalOrder { order, position })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }
}

/// Kahn's algorithm, always releasing the smallest available id.
pub fn topological_order(dag: &DirectedGraph) -> Result<TopologicalOrder> {
    let n = dag.vertex_count();
    let mut indegree: Vec<usize> = dag.vertices().map(|v| dag.in_neighbors(v).len()).collect();
    let mut ready: BinaryHeap<Reverse<VertexId>> = dag
        .vertices()
        .filter(|&v| indegree[v] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut position = vec![0; n];
    while let Some(Reverse(v)) = ready.pop() {
        position[v] = order.len();
        order.push(v);
        for &w in dag.out_neighbors(v) {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() != n {
        return Err(Error::CycleDetected);
    }
    Ok(TopologicalOrder { order, position })
}

/// The minimal vertices reaching both ends of the edge about to be inserted.
///
/// `P` holds every vertex that reaches both `u` and `v` in `g_cur`; members
/// that reach another member of `P` are dropped. Ascending id order.
pub fn candidate_frontier(g_cur: &DirectedGraph, u: VertexId, v: VertexId) -> Vec<VertexId> {
    let to_u = reaching(g_cur, u);
    let to_v = reaching(g_cur, v);
    let n = g_cur.vertex_count();
    let in_p: Vec<bool> = (0..n).map(|w| to_u[w] && to_v[w]).collect();
    let members: Vec<VertexId> = (0..n).filter(|&w| in_p[w]).collect();
    if members.len() <= 1 {
        return members;
    }
    members
        .iter()
        .copied()
        .filter(|&w| !reaches_other_member(g_cur, w, &in_p))
        .collect()
}

fn reaches_other_member(g: &DirectedGraph, w: VertexId, in_p: &[bool]) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    seen[w] = true;
    let mut queue = VecDeque::from([w]);
    while let Some(x) = queue.pop_front() {
        for &y in g.out_neighbors(x) {
            if in_p[y] {
                return true;
            }
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    false
}

/// Path-invariance basis of an acyclic graph for the given order.
pub fn dag_basis(dag: &DirectedGraph, order: &TopologicalOrder) -> Result<Basis> {
    if order.order().len() != dag.vertex_count()
        || dag
            .edges()
            .iter()
            .any(|&(u, v)| order.position(u) >= order.position(v))
    {
        // An order that fits the graph only exists when it is acyclic.
        topological_order(dag)?;
        return Err(Error::InvalidArgument(
            "topological order does not match the graph".into(),
        ));
    }
    let mut edges = dag.edges().to_vec();
    edges.sort_by_key(|&(u, v)| (order.position(v), order.position(u)));

    let mut cur = DirectedGraph::with_labels(dag.labels().to_vec(), &[])?;
    let mut basis = Basis::new();
    for (u, v) in edges {
        for w in candidate_frontier(&cur, u, v) {
            let to_u = shortest_path(&cur, w, u).expect("w reaches u");
            let to_v = shortest_path(&cur, w, v).expect("w reaches v");
            let pair = PathPair::new(to_v, to_u.push(v)).expect("both paths run from w to v");
            basis.push(pair, Provenance::Dag);
        }
        cur.insert_edge(u, v);
    }
    Ok(basis)
}

/// [`dag_basis`] under the canonical (smallest-id-first) topological order.
pub fn dag_basis_canonical(dag: &DirectedGraph) -> Result<Basis> {
    let order = topological_order(dag)?;
    dag_basis(dag, &order)
}
