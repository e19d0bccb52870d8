//! Path-invariance basis of a strongly connected graph.
//!
//! A depth-first search from a root classifies every edge. Each back edge
//! `(u, v)` closes the tree path `v ~> u` into a cycle, which becomes a cycle
//! pair anchored at `v`. All remaining edges (tree, forward, cross) form an
//! acyclic subgraph whose DAG basis completes the result.

use crate::basis::{Basis, Provenance};
use crate::dag_basis::dag_basis_canonical;
use crate::error::{Error, Result};
use crate::graph::{reaching, DirectedGraph, Path, PathPair, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Tree,
    Back,
    Forward,
    Cross,
}

/// DFS tree with discovery/finish timestamps and an edge classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsForest {
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub discovery: Vec<usize>,
    pub finish: Vec<usize>,
    /// Class of each edge, indexed like [`DirectedGraph::edges`].
    pub edge_class: Vec<EdgeClass>,
    /// Edges in the order the search examined them.
    pub visit_order: Vec<(VertexId, VertexId)>,
}

impl DfsForest {
    pub fn class_of(&self, g: &DirectedGraph, u: VertexId, v: VertexId) -> Option<EdgeClass> {
        g.edge_id(u, v).map(|e| self.edge_class[e])
    }

    /// Tree path from ancestor `from` down to `to`.
    pub fn tree_path(&self, from: VertexId, to: VertexId) -> Option<Path> {
        let mut rev = vec![to];
        let mut cur = to;
        while cur != from {
            cur = self.parent[cur]?;
            rev.push(cur);
        }
        rev.reverse();
        Path::new(rev).ok()
    }
}

/// Depth-first search from `root`, scanning out-neighbours in ascending id
/// order. Timestamps start at 1 and share one clock.
pub fn dfs_classify(g: &DirectedGraph, root: VertexId) -> Result<DfsForest> {
    if !g.contains_vertex(root) {
        return Err(Error::VertexOutOfRange(root));
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let n = g.vertex_count();
    let mut color = vec![Color::White; n];
    let mut parent = vec![None; n];
    let mut discovery = vec![0; n];
    let mut finish = vec![0; n];
    let mut edge_class = vec![EdgeClass::Tree; g.edge_count()];
    let mut visit_order = Vec::with_capacity(g.edge_count());
    let mut clock = 1;

    discovery[root] = clock;
    clock += 1;
    color[root] = Color::Gray;
    let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
    while let Some(top) = stack.last_mut() {
        let (u, slot) = *top;
        let nbrs = g.out_neighbors(u);
        if slot == nbrs.len() {
            color[u] = Color::Black;
            finish[u] = clock;
            clock += 1;
            stack.pop();
            continue;
        }
        top.1 += 1;
        let v = nbrs[slot];
        let e = g
            .edge_id(u, v)
            .expect("adjacency lists mirror the edge set");
        visit_order.push((u, v));
        edge_class[e] = match color[v] {
            Color::White => {
                parent[v] = Some(u);
                discovery[v] = clock;
                clock += 1;
                color[v] = Color::Gray;
                stack.push((v, 0));
                EdgeClass::Tree
            }
            Color::Gray => EdgeClass::Back,
            Color::Black if discovery[u] < discovery[v] => EdgeClass::Forward,
            Color::Black => EdgeClass::Cross,
        };
    }
    if let Some(v) = (0..n).find(|&v| color[v] == Color::White) {
        return Err(Error::NotStronglyConnected(v));
    }
    Ok(DfsForest {
        root,
        parent,
        discovery,
        finish,
        edge_class,
        visit_order,
    })
}

/// Basis of a strongly connected graph together with the acyclic subgraph
/// built from its non-back edges.
pub fn scg_basis(g: &DirectedGraph, root: VertexId) -> Result<(Basis, DirectedGraph)> {
    let forest = dfs_classify(g, root)?;
    let back = reaching(g, root);
    if let Some(v) = g.vertices().find(|&v| !back[v]) {
        return Err(Error::NotStronglyConnected(v));
    }

    let mut basis = Basis::new();
    let mut acyclic_edges = Vec::new();
    for &(u, v) in &forest.visit_order {
        match forest.class_of(g, u, v).expect("visited edges exist") {
            EdgeClass::Back => {
                let cycle = forest
                    .tree_path(v, u)
                    .expect("a back edge points to an ancestor")
                    .push(v);
                basis.push(PathPair::cycle(cycle)?, Provenance::ScgCycle);
            }
            _ => acyclic_edges.push((u, v)),
        }
    }
    let acyclic = DirectedGraph::with_labels(g.labels().to_vec(), &acyclic_edges)?;
    basis.extend(dag_basis_canonical(&acyclic)?);
    Ok((basis, acyclic))
}

/// [`scg_basis`] rooted at the smallest vertex id.
pub fn scg_basis_default(g: &DirectedGraph) -> Result<(Basis, DirectedGraph)> {
    scg_basis(g, 0)
}
