#![allow(dead_code)]

use pathinv::mapopt::{random_orthogonal, Matrix};
use pathinv::DirectedGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random acyclic graph: edges follow a hidden random vertex order.
pub fn random_dag(rng: &mut impl Rng, max_n: usize, max_m: usize) -> DirectedGraph {
    let n = rng.random_range(2..=max_n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.random_range(1..=pairs.len().min(max_m));
    let edges: Vec<_> = pairs[..m]
        .iter()
        .map(|&(i, j)| (order[i], order[j]))
        .collect();
    DirectedGraph::from_edges(n, &edges).unwrap()
}

/// Random simple digraph without self-loops.
pub fn random_digraph(rng: &mut impl Rng, max_n: usize, max_m: usize) -> DirectedGraph {
    let n = rng.random_range(2..=max_n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.random_range(1..=pairs.len().min(max_m));
    DirectedGraph::from_edges(n, &pairs[..m]).unwrap()
}

/// Random strongly connected digraph: a Hamiltonian cycle over a random
/// permutation plus up to `max_extra` further edges.
pub fn random_scg(rng: &mut impl Rng, max_n: usize, max_extra: usize) -> DirectedGraph {
    let n = rng.random_range(2..=max_n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (perm[i], perm[(i + 1) % n])).collect();
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .filter(|e| !edges.contains(e))
        .collect();
    rest.shuffle(rng);
    let extra = rng.random_range(0..=rest.len().min(max_extra));
    edges.extend_from_slice(&rest[..extra]);
    DirectedGraph::from_edges(n, &edges).unwrap()
}

/// Path-invariant network `X_uv = Y_v Y_uᵀ` from random orthogonal `Y`.
pub fn orthogonal_potentials(rng: &mut impl Rng, n: usize, dim: usize) -> Vec<Matrix> {
    (0..n).map(|_| random_orthogonal(dim, rng)).collect()
}

/// Every vertex that `u` reaches, by plain DFS.
pub fn reach(g: &DirectedGraph, u: usize) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        for &y in g.out_neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}
