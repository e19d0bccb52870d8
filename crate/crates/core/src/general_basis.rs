//! Path-invariance basis of an arbitrary directed graph.
//!
//! The graph is factored into strongly connected components. The result
//! collects three groups, in this order:
//!
//! 1. the basis of the contracted DAG, lifted to concrete paths that enter
//!    and leave every component through its representative;
//! 2. the basis of every non-trivial component;
//! 3. for every contracted edge `(i, j)`, one pair per edge of a minimum
//!    spanning tree over the parallel cross edges `E_ij`.

use std::collections::HashMap;

use crate::basis::{Basis, Provenance};
use crate::dag_basis::dag_basis_canonical;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{shortest_path_within, DirectedGraph, Path, PathPair, VertexId};
use crate::scc::{contract_graph, tarjan_scc, ContractedDag, SccDecomposition};
use crate::scg_basis::scg_basis;

/// Minimum spanning tree over the cross edges of one contracted edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossEdgeTree {
    /// Cross edges, sorted lexicographically; node `0` is the tree root.
    pub nodes: Vec<(VertexId, VertexId)>,
    /// `(a, b, weight)` with `a < b` indexing into `nodes`.
    pub tree_edges: Vec<(usize, usize, usize)>,
}

/// Shortest path from `u` to `v` that stays inside component `c`.
fn path_in_component(
    g: &DirectedGraph,
    scc: &SccDecomposition,
    c: usize,
    u: VertexId,
    v: VertexId,
) -> Path {
    shortest_path_within(g, u, v, |x| scc.component_of(x) == c)
        .expect("vertices of one strongly connected component reach each other")
}

/// Kruskal over the complete graph on `E_ij`. The weight of node pair
/// `(uv, u'v')` is `|u ~> u'| + |v ~> v'|`, measured inside the tail and head
/// components; ties fall back to the node indices.
pub fn cross_edge_tree(
    g: &DirectedGraph,
    scc: &SccDecomposition,
    i: usize,
    j: usize,
    e_ij: &[(VertexId, VertexId)],
) -> Result<CrossEdgeTree> {
    for &(u, v) in e_ij {
        if !g.contains_vertex(u)
            || !g.contains_vertex(v)
            || !g.has_edge(u, v)
            || scc.component_of(u) != i
            || scc.component_of(v) != j
            || i == j
        {
            return Err(Error::NotCrossEdges(u, v));
        }
    }
    let mut nodes = e_ij.to_vec();
    nodes.sort_unstable();
    nodes.dedup();

    let mut candidates = Vec::with_capacity(nodes.len() * nodes.len().saturating_sub(1) / 2);
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            let (u, v) = nodes[a];
            let (u2, v2) = nodes[b];
            let w = path_in_component(g, scc, i, u, u2).len()
                + path_in_component(g, scc, j, v, v2).len();
            candidates.push((w, a, b));
        }
    }
    candidates.sort_unstable();

    let mut dsu = DisjointSets::new(nodes.len());
    let mut tree_edges = Vec::with_capacity(nodes.len().saturating_sub(1));
    for (w, a, b) in candidates {
        if dsu.union(a, b) {
            tree_edges.push((a, b, w));
            if tree_edges.len() + 1 == nodes.len() {
                break;
            }
        }
    }
    Ok(CrossEdgeTree { nodes, tree_edges })
}

/// Pairs `(u ~> u' + (u', v'), (u, v) + v ~> v')` for every spanning-tree
/// edge between cross edges `(u, v)` and `(u', v')` of `E_ij`.
pub fn cross_edge_pairs(
    g: &DirectedGraph,
    scc: &SccDecomposition,
    i: usize,
    j: usize,
    e_ij: &[(VertexId, VertexId)],
) -> Result<Basis> {
    if e_ij.is_empty() {
        return Err(Error::InvalidArgument("cross edge set is empty".into()));
    }
    let tree = cross_edge_tree(g, scc, i, j, e_ij)?;
    let mut basis = Basis::new();
    for &(a, b, _) in &tree.tree_edges {
        let (u, v) = tree.nodes[a];
        let (u2, v2) = tree.nodes[b];
        let left = path_in_component(g, scc, i, u, u2).push(v2);
        let right = Path::edge(u, v).concat(&path_in_component(g, scc, j, v, v2))?;
        basis.push(PathPair::new(left, right)?, Provenance::CrossEdge);
    }
    Ok(basis)
}

/// Upper bound on the basis size: `(|V|-1)|E|` for acyclic graphs and
/// `|V||E|` otherwise.
pub fn basis_size_bound(g: &DirectedGraph) -> usize {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if crate::dag_basis::topological_order(g).is_ok() {
        n.saturating_sub(1) * m
    } else {
        n * m
    }
}

/// Path-invariance basis of `g`. Weakly connected components are handled
/// independently and concatenated in order of their smallest vertex.
pub fn path_invariance_basis(g: &DirectedGraph) -> Basis {
    path_invariance_basis_with(g, Execution::default())
}

pub fn path_invariance_basis_with(g: &DirectedGraph, exec: Execution) -> Basis {
    let parts = g.weak_components();
    if parts.len() == 1 {
        return connected_basis(g, exec);
    }
    let bases = exec.map(&parts, |members| {
        let sub = g.induced_subgraph(members);
        connected_basis(&sub, Execution::Sequential).relabeled(members)
    });
    let mut out = Basis::new();
    for b in bases {
        out.extend(b);
    }
    out
}

fn connected_basis(g: &DirectedGraph, exec: Execution) -> Basis {
    let scc = tarjan_scc(g);
    let contracted = contract_graph(g, &scc);

    let mut basis = lifted_dag_basis(g, &scc, &contracted);

    let nontrivial: Vec<usize> = (0..scc.component_count())
        .filter(|&c| scc.component(c).len() > 1)
        .collect();
    let component_bases = exec.map(&nontrivial, |&c| {
        let members = scc.component(c);
        let sub = g.induced_subgraph(members);
        let (b, _) = scg_basis(&sub, 0).expect("a component is strongly connected");
        b.relabeled(members)
    });
    for b in component_bases {
        basis.extend(b);
    }

    let contracted_edges: Vec<_> = contracted.cross_edges.iter().collect();
    let cross_bases = exec.map(&contracted_edges, |&(&(i, j), e_ij)| {
        cross_edge_pairs(g, &scc, i, j, e_ij).expect("contraction yields valid cross edges")
    });
    for b in cross_bases {
        basis.extend(b);
    }
    basis
}

/// Basis of the contracted DAG mapped onto concrete paths of `g`.
///
/// The contracted DAG is renumbered by component representative before its
/// basis is computed, so id-based tie-breaking agrees with `g` itself when
/// every component is a single vertex.
fn lifted_dag_basis(
    g: &DirectedGraph,
    scc: &SccDecomposition,
    contracted: &ContractedDag,
) -> Basis {
    let k = scc.component_count();
    let mut by_rep: Vec<usize> = (0..k).collect();
    by_rep.sort_by_key(|&c| scc.representative(c));
    let mut rank = vec![0; k];
    for (r, &c) in by_rep.iter().enumerate() {
        rank[c] = r;
    }
    let edges: Vec<_> = contracted
        .dag
        .edges()
        .iter()
        .map(|&(i, j)| (rank[i], rank[j]))
        .collect();
    let renumbered = DirectedGraph::from_edges(k, &edges).expect("renumbering keeps edges valid");
    let dag_pairs = dag_basis_canonical(&renumbered).expect("contraction is acyclic");

    let mut lifted_cache: HashMap<Vec<usize>, Path> = HashMap::new();
    let mut lift = |component_path: &Path| -> Path {
        let comps: Vec<usize> = component_path
            .vertices()
            .iter()
            .map(|&r| by_rep[r])
            .collect();
        lifted_cache
            .entry(comps.clone())
            .or_insert_with(|| lift_component_path(g, scc, contracted, &comps))
            .clone()
    };

    let mut basis = Basis::new();
    for pair in dag_pairs.pairs() {
        let p = lift(pair.p());
        let q = lift(pair.q());
        basis.push(
            PathPair::new(p, q).expect("lifted paths share endpoints"),
            Provenance::Lifted,
        );
    }
    basis
}

fn lift_component_path(
    g: &DirectedGraph,
    scc: &SccDecomposition,
    contracted: &ContractedDag,
    comps: &[usize],
) -> Path {
    let mut cur = scc.representative(comps[0]);
    let mut path = Path::empty(cur);
    for w in comps.windows(2) {
        let (x, y) = *contracted
            .cross(w[0], w[1])
            .iter()
            .min()
            .expect("contracted edge has cross edges");
        path = path
            .concat(&path_in_component(g, scc, w[0], cur, x))
            .expect("connector starts at the current vertex")
            .push(y);
        cur = y;
    }
    let last = *comps.last().expect("nonempty component path");
    path.concat(&path_in_component(
        g,
        scc,
        last,
        cur,
        scc.representative(last),
    ))
    .expect("connector starts at the current vertex")
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}
