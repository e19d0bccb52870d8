//! Bounded closure of a set of path pairs.
//!
//! The closure of a basis under symmetry, transitivity, stitch and merge is
//! the smallest congruence on walks that contains the basis: if `p ≡ q` then
//! `r + p + r' ≡ r + q + r'`. Restricted to walks of at most `L` edges this
//! is computed exactly by congruence closure over the finite universe of
//! such walks, where every walk of length `k ≥ 1` is both "prefix + last
//! edge" and "first edge + suffix". Two walks are merged when their prefixes
//! (or suffixes) are equivalent and they add the same edge on that side.
//!
//! Stitch `(p + p', q + q')` needs either `q + p'` or `p + q'` as a stepping
//! stone; the two have total length at most `2L`, so one of them fits in the
//! universe and the bounded congruence loses nothing.
//!
//! Cut is applied as a cancellation pass: all cycles in the class of `∅_u`
//! that end in the same walk `s` have equivalent prefixes. Bucketing by every
//! suffix instead of the maximal one yields the same closure, since shorter
//! suffixes follow from the maximal one by right extension. The same pass
//! moves every such cycle to its other anchors (see
//! [`super::rules::apply_rotation`]).

use std::collections::hash_map::Entry;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{DirectedGraph, Path, PathPair, VertexId};

const NONE: u32 = u32::MAX;

/// Every walk of a graph with at most `max_len` edges, stored as a trie.
///
/// Node ids are assigned in (length, lexicographic) order; node `v` for
/// `v < |V|` is the empty path at `v`.
#[derive(Debug, Clone)]
pub struct WalkUniverse {
    max_len: usize,
    start: Vec<u32>,
    end: Vec<u32>,
    len: Vec<u16>,
    prefix: Vec<u32>,
    suffix: Vec<u32>,
    first_edge: Vec<u32>,
    last_edge: Vec<u32>,
    child_start: Vec<u32>,
    /// Out-neighbours and edge ids per vertex, ascending by neighbour.
    out: Vec<Vec<(VertexId, u32)>>,
}

impl WalkUniverse {
    pub fn build(g: &DirectedGraph, max_len: usize, max_walks: usize) -> Result<Self> {
        let n = g.vertex_count();
        if max_len > u16::MAX as usize {
            return Err(Error::InvalidArgument("walk length bound too large".into()));
        }
        let out: Vec<Vec<(VertexId, u32)>> = g
            .vertices()
            .map(|v| {
                g.out_neighbors(v)
                    .iter()
                    .map(|&w| (w, g.edge_id(v, w).expect("adjacent") as u32))
                    .collect()
            })
            .collect();
        let budget = Error::BudgetExceeded {
            what: "walks",
            limit: max_walks,
        };
        if n > max_walks {
            return Err(budget);
        }
        let mut u = WalkUniverse {
            max_len,
            start: (0..n as u32).collect(),
            end: (0..n as u32).collect(),
            len: vec![0; n],
            prefix: vec![NONE; n],
            suffix: vec![NONE; n],
            first_edge: vec![NONE; n],
            last_edge: vec![NONE; n],
            child_start: Vec::new(),
            out,
        };
        let (mut lo, mut hi) = (0usize, n);
        for k in 0..max_len {
            for x in lo..hi {
                u.child_start.push(u.start.len() as u32);
                let end = u.end[x] as usize;
                for idx in 0..u.out[end].len() {
                    let (w, e) = u.out[end][idx];
                    if u.start.len() == max_walks {
                        return Err(budget);
                    }
                    let suffix = if k == 0 {
                        w as u32
                    } else {
                        u.child_start[u.suffix[x] as usize] + idx as u32
                    };
                    u.start.push(u.start[x]);
                    u.end.push(w as u32);
                    u.len.push(k as u16 + 1);
                    u.prefix.push(x as u32);
                    u.suffix.push(suffix);
                    u.first_edge.push(if k == 0 { e } else { u.first_edge[x] });
                    u.last_edge.push(e);
                }
            }
            lo = hi;
            hi = u.start.len();
        }
        Ok(u)
    }

    pub fn walk_count(&self) -> usize {
        self.start.len()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len_of(&self, node: u32) -> usize {
        self.len[node as usize] as usize
    }

    pub fn endpoints(&self, node: u32) -> (VertexId, VertexId) {
        (
            self.start[node as usize] as usize,
            self.end[node as usize] as usize,
        )
    }

    /// Node id of `p`, if `p` is a walk of the graph within the bound.
    pub fn node_of(&self, p: &Path) -> Option<u32> {
        if p.len() > self.max_len || p.start() >= self.out.len() {
            return None;
        }
        let mut node = p.start() as u32;
        for (_, w) in p.edges() {
            let end = self.end[node as usize] as usize;
            let idx = self.out[end].binary_search_by_key(&w, |&(x, _)| x).ok()?;
            node = self.child_start[node as usize] + idx as u32;
        }
        Some(node)
    }

    /// Node of `walk(node) + p`, where `p` starts at the end of `node`.
    fn extend(&self, node: u32, p: &Path) -> u32 {
        let mut cur = node;
        for (_, w) in p.edges() {
            let end = self.end[cur as usize] as usize;
            let idx = self.out[end]
                .binary_search_by_key(&w, |&(x, _)| x)
                .expect("edge");
            cur = self.child_start[cur as usize] + idx as u32;
        }
        cur
    }

    pub fn path_of(&self, node: u32) -> Path {
        let mut rev = Vec::with_capacity(self.len_of(node) + 1);
        let mut cur = node;
        while self.prefix[cur as usize] != NONE {
            rev.push(self.end[cur as usize] as usize);
            cur = self.prefix[cur as usize];
        }
        rev.push(cur as usize);
        rev.reverse();
        Path::new(rev).expect("nonempty")
    }
}

/// Congruence closure state over a [`WalkUniverse`].
#[derive(Debug, Clone)]
pub struct Closure {
    walks: WalkUniverse,
    parent: Vec<u32>,
    members: Vec<Vec<u32>>,
    /// Nodes whose prefix (`dir = 0`) or suffix (`dir = 1`) lies in the class.
    uses: Vec<Vec<(u32, u8)>>,
    signatures: FxHashMap<u64, u32>,
    pending: Vec<(u32, u32)>,
    unions: usize,
    rounds: usize,
}

impl Closure {
    pub fn new(walks: WalkUniverse) -> Self {
        let n = walks.walk_count();
        let mut uses: Vec<Vec<(u32, u8)>> = vec![Vec::new(); n];
        let mut signatures = FxHashMap::default();
        signatures.reserve(2 * n);
        for node in 0..n as u32 {
            let i = node as usize;
            if walks.prefix[i] == NONE {
                continue;
            }
            uses[walks.prefix[i] as usize].push((node, 0));
            uses[walks.suffix[i] as usize].push((node, 1));
            signatures.insert(sig_key(0, walks.last_edge[i], walks.prefix[i]), node);
            signatures.insert(sig_key(1, walks.first_edge[i], walks.suffix[i]), node);
        }
        Closure {
            parent: (0..n as u32).collect(),
            members: (0..n as u32).map(|x| vec![x]).collect(),
            uses,
            signatures,
            pending: Vec::new(),
            unions: 0,
            rounds: 0,
            walks,
        }
    }

    pub fn walks(&self) -> &WalkUniverse {
        &self.walks
    }

    pub fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn find_compress(&mut self, x: u32) -> u32 {
        let root = self.find(x);
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    pub fn same_class(&self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    /// Number of successful class merges so far.
    pub fn union_count(&self) -> usize {
        self.unions
    }

    /// Number of cut/congruence rounds run by [`Self::saturate`].
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Unordered pairs of distinct equivalent walks.
    pub fn pair_count(&self) -> u64 {
        (0..self.parent.len())
            .filter(|&x| self.parent[x] == x as u32)
            .map(|x| {
                let k = self.members[x].len() as u64;
                k * (k - 1) / 2
            })
            .sum()
    }

    fn signature(&self, node: u32, dir: u8, root: u32) -> u64 {
        let i = node as usize;
        let edge = if dir == 0 {
            self.walks.last_edge[i]
        } else {
            self.walks.first_edge[i]
        };
        sig_key(dir, edge, root)
    }

    /// Declares `a ≡ b` and propagates congruences.
    pub fn union(&mut self, a: u32, b: u32) {
        self.pending.push((a, b));
        while let Some((a, b)) = self.pending.pop() {
            let (mut ra, mut rb) = (self.find_compress(a), self.find_compress(b));
            if ra == rb {
                continue;
            }
            let weight = |r: u32| self.members[r as usize].len() + self.uses[r as usize].len();
            if weight(ra) < weight(rb) {
                std::mem::swap(&mut ra, &mut rb);
            }
            debug_assert_eq!(
                self.walks.endpoints(ra),
                self.walks.endpoints(rb),
                "only walks with equal endpoints may be identified"
            );
            let moved = std::mem::take(&mut self.uses[rb as usize]);
            for &(node, dir) in &moved {
                let key = self.signature(node, dir, rb);
                if self.signatures.get(&key) == Some(&node) {
                    self.signatures.remove(&key);
                }
            }
            self.parent[rb as usize] = ra;
            self.unions += 1;
            for &(node, dir) in &moved {
                match self.signatures.entry(self.signature(node, dir, ra)) {
                    Entry::Occupied(e) => {
                        let other = *e.get();
                        if other != node {
                            self.pending.push((node, other));
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(node);
                    }
                }
            }
            self.uses[ra as usize].extend(moved);
            let members = std::mem::take(&mut self.members[rb as usize]);
            self.members[ra as usize].extend(members);
        }
    }

    /// Pairs implied by the cycles in the class of `∅_u`: prefixes that end
    /// in the same walk, and every rotation against its new anchor.
    fn cycle_candidates(&self, anchor: VertexId) -> Vec<(u32, u32)> {
        let root = self.find(anchor as u32);
        let mut bucket: FxHashMap<u32, u32> = FxHashMap::default();
        let mut out = Vec::new();
        let mut prefixes = Vec::new();
        for &cycle in &self.members[root as usize] {
            let k = self.walks.len_of(cycle);
            if k == 0 {
                continue;
            }
            // prefixes[i] has i edges; the matching suffix has k - i edges.
            prefixes.clear();
            let mut p = cycle;
            while p != NONE {
                prefixes.push(p);
                p = self.walks.prefix[p as usize];
            }
            prefixes.reverse();
            let mut s = cycle;
            for &prefix in &prefixes[1..k] {
                s = self.walks.suffix[s as usize];
                let rotated = self.walks.extend(s, &self.walks.path_of(prefix));
                let (v, _) = self.walks.endpoints(s);
                if self.find(rotated) != self.find(v as u32) {
                    out.push((rotated, v as u32));
                }
            }
            let mut s = cycle;
            for &pre in prefixes.iter().take(k) {
                match bucket.entry(s) {
                    Entry::Occupied(e) => {
                        let first = *e.get();
                        if self.find(first) != self.find(pre) {
                            out.push((first, pre));
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(pre);
                    }
                }
                s = self.walks.suffix[s as usize];
            }
        }
        out
    }

    /// Runs cut rounds until no new equivalence appears.
    pub fn saturate(&mut self, exec: Execution) {
        let n = self.walks.out.len();
        loop {
            self.rounds += 1;
            let before = self.unions;
            let candidates = exec.map_range(0..n, |u| self.cycle_candidates(u));
            for list in candidates {
                for (a, b) in list {
                    self.union(a, b);
                }
            }
            if self.unions == before {
                break;
            }
        }
    }

    /// Class members of `node`, in id order.
    pub fn class_of(&self, node: u32) -> Vec<u32> {
        let mut m = self.members[self.find(node) as usize].clone();
        m.sort_unstable();
        m
    }

    /// Representative pairs `(root member, member)` for every class with
    /// more than one walk.
    pub fn nontrivial_pairs(&self) -> Vec<PathPair> {
        let mut out = Vec::new();
        for r in 0..self.parent.len() {
            if self.parent[r] != r as u32 || self.members[r].len() < 2 {
                continue;
            }
            let mut m = self.members[r].clone();
            m.sort_unstable();
            let first = self.walks.path_of(m[0]);
            for &x in &m[1..] {
                out.push(PathPair::new(first.clone(), self.walks.path_of(x)).expect("same class"));
            }
        }
        out
    }
}

fn sig_key(dir: u8, edge: u32, class: u32) -> u64 {
    ((dir as u64) << 63) | ((edge as u64) << 32) | class as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn universe_counts_walks() {
        let g = build_graph([("a", "b"), ("b", "a")]).unwrap();
        let u = WalkUniverse::build(&g, 3, 100).unwrap();
        // two walks of every length 0..=3
        assert_eq!(u.walk_count(), 8);
        for node in 0..u.walk_count() as u32 {
            let p = u.path_of(node);
            assert_eq!(u.node_of(&p), Some(node));
            assert!(g.contains_path(&p));
        }
    }

    #[test]
    fn universe_respects_budget() {
        let g = build_graph([("a", "b"), ("b", "a"), ("a", "c"), ("c", "a")]).unwrap();
        assert!(matches!(
            WalkUniverse::build(&g, 10, 50),
            Err(Error::BudgetExceeded { limit: 50, .. })
        ));
    }

    #[test]
    fn suffix_links_are_consistent() {
        let g = build_graph([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")]).unwrap();
        let u = WalkUniverse::build(&g, 4, 1000).unwrap();
        for node in g.vertex_count() as u32..u.walk_count() as u32 {
            let p = u.path_of(node);
            let tail = p.slice(1, p.len());
            assert_eq!(u.path_of(u.suffix[node as usize]), tail);
        }
    }

    #[test]
    fn congruence_extends_equalities() {
        let g = build_graph([("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("d", "e")]).unwrap();
        let u = WalkUniverse::build(&g, 3, 1000).unwrap();
        let abd = u
            .node_of(&g.path_from_labels(&["a", "b", "d"]).unwrap())
            .unwrap();
        let acd = u
            .node_of(&g.path_from_labels(&["a", "c", "d"]).unwrap())
            .unwrap();
        let abde = u
            .node_of(&g.path_from_labels(&["a", "b", "d", "e"]).unwrap())
            .unwrap();
        let acde = u
            .node_of(&g.path_from_labels(&["a", "c", "d", "e"]).unwrap())
            .unwrap();
        let mut c = Closure::new(u);
        assert!(!c.same_class(abde, acde));
        c.union(abd, acd);
        assert!(c.same_class(abde, acde));
        assert_eq!(c.pair_count(), 2);
    }
}
