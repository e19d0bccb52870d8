//! The three rewrite operations on path pairs.

use crate::graph::{Path, PathPair};

/// `(p, q)` and `(p', q')` with `p, q: u ~> v` and `p', q': v ~> w` give
/// `(p + p', q + q')`.
pub fn apply_stitch(a: &PathPair, b: &PathPair) -> Option<PathPair> {
    if a.end() != b.start() {
        return None;
    }
    let p = a.p().concat(b.p()).ok()?;
    let q = a.q().concat(b.q()).ok()?;
    PathPair::new(p, q).ok()
}

/// For `a = (p, q)`, every occurrence of `p` as a contiguous sub-path of one
/// path of `b` (written `r + p + r'`) yields `(r + q + r', other path of b)`.
///
/// Occurrences are reported for `b.p` first, then `b.q`, each left to right.
pub fn apply_merge(a: &PathPair, b: &PathPair) -> Vec<PathPair> {
    let mut out = Vec::new();
    for (host, other) in [(b.p(), b.q()), (b.q(), b.p())] {
        for at in occurrences(a.p(), host) {
            let rewritten = splice(host, at, a.p().len(), a.q());
            out.push(PathPair::new(rewritten, other.clone()).expect("splice keeps endpoints"));
        }
    }
    out
}

/// Two cycle pairs `(C1, ∅_u)` and `(C2, ∅_u)` whose cycles end in a common
/// non-empty path `s` give `(p, p')` where `C1 = p + s` and `C2 = p' + s`,
/// taking `s` maximal.
pub fn apply_cut(a: &PathPair, b: &PathPair) -> Option<PathPair> {
    if !a.is_cycle_pair() || !b.is_cycle_pair() || a.start() != b.start() {
        return None;
    }
    let (c1, c2) = (a.p().vertices(), b.p().vertices());
    let shared_vertices = c1
        .iter()
        .rev()
        .zip(c2.iter().rev())
        .take_while(|(x, y)| x == y)
        .count();
    // A common path with at least one edge shares at least two vertices.
    if shared_vertices < 2 {
        return None;
    }
    let p = Path::new(c1[..=c1.len() - shared_vertices].to_vec()).ok()?;
    let p2 = Path::new(c2[..=c2.len() - shared_vertices].to_vec()).ok()?;
    PathPair::new(p, p2).ok()
}

/// A cycle pair `(p + s, ∅_u)` with `p: u ~> v` gives `(s + p, ∅_v)`, for
/// every split with both parts nonempty, in order of `p`'s length.
///
/// Not one of the three base rules: it reads a cycle pair as a statement
/// about the cycle rather than its anchor, which square maps justify
/// (a one-sided inverse of a square matrix is two-sided).
pub fn apply_rotation(a: &PathPair) -> Vec<PathPair> {
    if !a.is_cycle_pair() {
        return Vec::new();
    }
    let c = a.p().vertices();
    (1..c.len() - 1)
        .map(|i| {
            let mut v = c[i..].to_vec();
            v.extend_from_slice(&c[1..=i]);
            PathPair::cycle(Path::new(v).expect("nonempty")).expect("closed")
        })
        .collect()
}

/// Offsets (in edges) at which `needle` occurs inside `host`.
fn occurrences(needle: &Path, host: &Path) -> Vec<usize> {
    let (n, h) = (needle.vertices(), host.vertices());
    if n.len() > h.len() {
        return Vec::new();
    }
    (0..=h.len() - n.len())
        .filter(|&i| &h[i..i + n.len()] == n)
        .collect()
}

/// Replaces edges `at..at + len` of `host` by `with`.
fn splice(host: &Path, at: usize, len: usize, with: &Path) -> Path {
    let h = host.vertices();
    let mut v = Vec::with_capacity(h.len() - len + with.len());
    v.extend_from_slice(&h[..at]);
    v.extend_from_slice(with.vertices());
    v.extend_from_slice(&h[at + len + 1..]);
    Path::new(v).expect("nonempty")
}
