//! Strongly connected components (Tarjan) and the contracted DAG.

use std::collections::BTreeMap;

use crate::graph::{DirectedGraph, VertexId};

/// Partition of the vertices into strongly connected components.
///
/// Components are indexed in a topological order of the contraction: every
/// edge between two components goes from a smaller to a larger index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    component_of: Vec<usize>,
    components: Vec<Vec<VertexId>>,
}

impl SccDecomposition {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v]
    }

    /// Members of component `c`, ascending.
    pub fn component(&self, c: usize) -> &[VertexId] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<VertexId>] {
        &self.components
    }

    /// Smallest vertex id of component `c`.
    pub fn representative(&self, c: usize) -> VertexId {
        self.components[c][0]
    }
}

/// Tarjan's algorithm, iterative. Roots are tried in ascending id order and
/// neighbours are scanned in ascending id order.
pub fn tarjan_scc(g: &DirectedGraph) -> SccDecomposition {
    const UNVISITED: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut found: Vec<Vec<VertexId>> = Vec::new();
    let mut counter = 0usize;
    // (vertex, next neighbour slot)
    let mut call: Vec<(VertexId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        lowlink[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let (v, slot) = *top;
            let nbrs = g.out_neighbors(v);
            if slot < nbrs.len() {
                top.1 += 1;
                let w = nbrs[slot];
                if index[w] == UNVISITED {
                    index[w] = counter;
                    lowlink[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                found.push(comp);
            }
        }
    }

    // Tarjan emits components sinks-first; reversing gives a topological order.
    found.reverse();
    let mut component_of = vec![0; n];
    for (c, members) in found.iter().enumerate() {
        for &v in members {
            component_of[v] = c;
        }
    }
    SccDecomposition {
        component_of,
        components: found,
    }
}

/// The DAG of components together with the original edges behind each of
/// its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedDag {
    pub dag: DirectedGraph,
    /// `E_ij` for every contracted edge `(i, j)`, in original edge order.
    pub cross_edges: BTreeMap<(usize, usize), Vec<(VertexId, VertexId)>>,
}

impl ContractedDag {
    pub fn cross(&self, i: usize, j: usize) -> &[(VertexId, VertexId)] {
        self.cross_edges
            .get(&(i, j))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

pub fn contract_graph(g: &DirectedGraph, scc: &SccDecomposition) -> ContractedDag {
    let mut cross_edges: BTreeMap<(usize, usize), Vec<(VertexId, VertexId)>> = BTreeMap::new();
    let mut dag_edges = Vec::new();
    for &(u, v) in g.edges() {
        let (i, j) = (scc.component_of(u), scc.component_of(v));
        if i == j {
            continue;
        }
        let bucket = cross_edges.entry((i, j)).or_default();
        if bucket.is_empty() {
            dag_edges.push((i, j));
        }
        bucket.push((u, v));
    }
    let dag = DirectedGraph::from_edges(scc.component_count(), &dag_edges)
        .expect("contracted edges join distinct components");
    ContractedDag { dag, cross_edges }
}
