//! Literal bounded closure by repeated rule application.
//!
//! Every reflexive pair is materialized and every rule is tried on every
//! ordered pair of pairs until nothing new appears. Only usable on tiny
//! graphs; serves as a cross-check for the congruence engine.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{enumerate_paths_with_cap, DirectedGraph, PathPair};

use super::rules::{apply_cut, apply_merge, apply_rotation, apply_stitch};

/// Closure of `seed` (plus all reflexive pairs) under symmetry,
/// transitivity, stitch, merge, cut and cycle rotation, discarding pairs longer than `bound`.
pub fn naive_closure(
    g: &DirectedGraph,
    seed: &[PathPair],
    bound: usize,
    max_pairs: usize,
) -> Result<BTreeSet<PathPair>> {
    let mut set = BTreeSet::new();
    for u in g.vertices() {
        for v in g.vertices() {
            for p in enumerate_paths_with_cap(g, u, v, bound, max_pairs)? {
                set.insert(PathPair::reflexive(p));
            }
        }
    }
    set.extend(seed.iter().filter(|p| p.max_len() <= bound).cloned());

    loop {
        let current: Vec<PathPair> = set.iter().cloned().collect();
        let mut fresh = Vec::new();
        let mut emit = |pair: PathPair| {
            debug_assert!(g.contains_path(pair.p()) && g.contains_path(pair.q()));
            if pair.max_len() <= bound && !set.contains(&pair) {
                fresh.push(pair);
            }
        };
        for a in &current {
            emit(a.swapped());
            for r in apply_rotation(a) {
                emit(r);
            }
            for b in &current {
                if a.q() == b.p() {
                    emit(PathPair::new(a.p().clone(), b.q().clone()).expect("shared middle"));
                }
                if let Some(s) = apply_stitch(a, b) {
                    emit(s);
                }
                if !a.is_reflexive() {
                    for m in apply_merge(a, b) {
                        emit(m);
                    }
                }
                if let Some(c) = apply_cut(a, b) {
                    emit(c);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(set);
        }
        set.extend(fresh);
        if set.len() > max_pairs {
            return Err(Error::BudgetExceeded {
                what: "pairs",
                limit: max_pairs,
            });
        }
    }
}
