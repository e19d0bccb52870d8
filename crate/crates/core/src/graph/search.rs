use std::collections::VecDeque;

use super::{DirectedGraph, Path, VertexId};
use crate::error::{Error, Result};

/// Default cap on the number of paths [`enumerate_paths`] may return.
pub const DEFAULT_PATH_BUDGET: usize = 1_000_000;

const UNREACHED: usize = usize::MAX;

fn bfs<'g>(
    start: VertexId,
    n: usize,
    next: impl Fn(VertexId) -> &'g [VertexId],
    allowed: impl Fn(VertexId) -> bool,
) -> Vec<usize> {
    let mut dist = vec![UNREACHED; n];
    if !allowed(start) {
        return dist;
    }
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in next(x) {
            if dist[y] == UNREACHED && allowed(y) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Hop distance from every vertex to `target` (`usize::MAX` if unreachable).
pub fn distances_to(g: &DirectedGraph, target: VertexId) -> Vec<usize> {
    bfs(target, g.vertex_count(), |x| g.in_neighbors(x), |_| true)
}

/// `mask[x]` is true iff `source` reaches `x` (including `source` itself).
pub fn reachable_from(g: &DirectedGraph, source: VertexId) -> Vec<bool> {
    bfs(source, g.vertex_count(), |x| g.out_neighbors(x), |_| true)
        .into_iter()
        .map(|d| d != UNREACHED)
        .collect()
}

/// `mask[x]` is true iff `x` reaches `target` (including `target` itself).
pub fn reaching(g: &DirectedGraph, target: VertexId) -> Vec<bool> {
    distances_to(g, target)
        .into_iter()
        .map(|d| d != UNREACHED)
        .collect()
}

/// Breadth-first shortest path from `u` to `v`, or `None` if unreachable.
///
/// Among all shortest paths the lexicographically smallest vertex sequence
/// is returned; `u == v` gives the empty path at `u`.
pub fn shortest_path(g: &DirectedGraph, u: VertexId, v: VertexId) -> Option<Path> {
    shortest_path_within(g, u, v, |_| true)
}

/// [`shortest_path`] restricted to vertices accepted by `allowed`.
pub fn shortest_path_within(
    g: &DirectedGraph,
    u: VertexId,
    v: VertexId,
    allowed: impl Fn(VertexId) -> bool,
) -> Option<Path> {
    if !allowed(u) || !allowed(v) {
        return None;
    }
    let dist = bfs(v, g.vertex_count(), |x| g.in_neighbors(x), &allowed);
    if dist[u] == UNREACHED {
        return None;
    }
    // Greedy walk along strictly decreasing distance; picking the smallest
    // admissible neighbour at each step yields the lexicographic minimum.
    let mut vertices = Vec::with_capacity(dist[u] + 1);
    let mut cur = u;
    vertices.push(cur);
    while cur != v {
        cur = *g
            .out_neighbors(cur)
            .iter()
            .find(|&&y| dist[y] != UNREACHED && dist[y] + 1 == dist[cur])
            .expect("BFS distances admit a descending neighbour");
        vertices.push(cur);
    }
    Some(Path::new(vertices).expect("nonempty"))
}

/// All walks from `u` to `v` with at most `max_len` edges, ordered by
/// length and then lexicographically. Includes the empty path when `u == v`.
pub fn enumerate_paths(
    g: &DirectedGraph,
    u: VertexId,
    v: VertexId,
    max_len: usize,
) -> Result<Vec<Path>> {
    enumerate_paths_with_cap(g, u, v, max_len, DEFAULT_PATH_BUDGET)
}

pub fn enumerate_paths_with_cap(
    g: &DirectedGraph,
    u: VertexId,
    v: VertexId,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Path>> {
    let dist = distances_to(g, v);
    let mut out = Vec::new();
    if dist[u] == UNREACHED {
        return Ok(out);
    }
    let mut stack = Vec::with_capacity(max_len + 1);
    for len in dist[u]..=max_len {
        stack.clear();
        stack.push(u);
        walks_of_exact_len(g, &dist, v, len, &mut stack, &mut out, cap)?;
    }
    Ok(out)
}

fn walks_of_exact_len(
    g: &DirectedGraph,
    dist: &[usize],
    target: VertexId,
    len: usize,
    stack: &mut Vec<VertexId>,
    out: &mut Vec<Path>,
    cap: usize,
) -> Result<()> {
    let cur = *stack.last().expect("stack holds the start vertex");
    let remaining = len + 1 - stack.len();
    if remaining == 0 {
        if cur == target {
            if out.len() == cap {
                return Err(Error::BudgetExceeded {
                    what: "paths",
                    limit: cap,
                });
            }
            out.push(Path::new(stack.clone()).expect("nonempty"));
        }
        return Ok(());
    }
    for &y in g.out_neighbors(cur) {
        if dist[y] < remaining {
            stack.push(y);
            walks_of_exact_len(g, dist, target, len, stack, out, cap)?;
            stack.pop();
        }
    }
    Ok(())
}
