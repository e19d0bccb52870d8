//! Independent verifier for path-invariance bases.
//!
//! [`rules`] implements merge, stitch, cut and cycle rotation literally on
//! path pairs and [`naive`] closes a pair set under them by brute force. [`verify_basis`]
//! uses the congruence formulation in [`closure`], which computes the same
//! bounded closure on graphs far beyond the reach of the naive loop.

pub mod closure;
pub mod naive;
pub mod rules;

use serde::Serialize;

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{DirectedGraph, Path, PathPair};

pub use closure::{Closure, WalkUniverse};
pub use rules::{apply_cut, apply_merge, apply_rotation, apply_stitch};

pub const DEFAULT_MAX_WALKS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub check_len: usize,
    pub slack: usize,
    /// Cap on the number of walks materialized, and on missing pairs listed.
    pub max_walks: usize,
    /// Retry once with doubled slack before reporting a failure.
    pub retry: bool,
    pub exec: Execution,
}

impl VerifyConfig {
    pub fn new(check_len: usize, slack: usize) -> Self {
        VerifyConfig {
            check_len,
            slack,
            max_walks: DEFAULT_MAX_WALKS,
            retry: true,
            exec: Execution::default(),
        }
    }

    /// `check_len = slack = |V|`.
    pub fn for_graph(g: &DirectedGraph) -> Self {
        Self::new(g.vertex_count(), g.vertex_count())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub verified: bool,
    /// Pairs within the check length that the closure does not contain,
    /// shorter and lexicographically smaller walks first.
    pub missing: Vec<PathPair>,
    /// Number of unordered pairs of distinct equivalent walks.
    pub closure_size: u64,
    pub iterations: usize,
    pub slack_used: usize,
}

#[derive(Serialize)]
struct LabelledPair {
    p: Vec<String>,
    q: Vec<String>,
}

#[derive(Serialize)]
struct LabelledReport {
    verified: bool,
    missing: Vec<LabelledPair>,
    closure_size: u64,
    iterations: usize,
    slack_used: usize,
}

impl VerificationReport {
    /// Pretty-printed JSON with vertex labels in place of ids.
    pub fn to_json(&self, g: &DirectedGraph) -> String {
        let labels = |p: &Path| -> Vec<String> {
            p.vertices()
                .iter()
                .map(|&v| g.label(v).to_owned())
                .collect()
        };
        let report = LabelledReport {
            verified: self.verified,
            missing: self
                .missing
                .iter()
                .map(|m| LabelledPair {
                    p: labels(m.p()),
                    q: labels(m.q()),
                })
                .collect(),
            closure_size: self.closure_size,
            iterations: self.iterations,
            slack_used: self.slack_used,
        };
        serde_json::to_string_pretty(&report).expect("plain data serializes")
    }
}

/// [`verify_basis_with`] using default budget, retry and execution policy.
pub fn verify_basis(
    g: &DirectedGraph,
    basis: &Basis,
    check_len: usize,
    slack: usize,
) -> Result<VerificationReport> {
    verify_basis_with(g, basis, &VerifyConfig::new(check_len, slack))
}

pub fn verify_basis_with(
    g: &DirectedGraph,
    basis: &Basis,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    if config.check_len == 0 {
        return Err(Error::InvalidArgument(
            "check length must be at least 1".into(),
        ));
    }
    for pair in basis.pairs() {
        if !g.contains_path(pair.p()) || !g.contains_path(pair.q()) {
            return Err(Error::InvalidPathPair(g.format_pair(pair)));
        }
    }
    let first = verify_once(g, basis, config, config.slack)?;
    if first.verified || !config.retry || config.slack == 0 {
        return Ok(first);
    }
    match verify_once(g, basis, config, 2 * config.slack) {
        Ok(second) => Ok(second),
        Err(Error::BudgetExceeded { .. }) => Ok(first),
        Err(e) => Err(e),
    }
}

fn verify_once(
    g: &DirectedGraph,
    basis: &Basis,
    config: &VerifyConfig,
    slack: usize,
) -> Result<VerificationReport> {
    let bound = config.check_len + slack;
    let walks = WalkUniverse::build(g, bound, config.max_walks)?;
    let mut closure = Closure::new(walks);
    for pair in basis.pairs() {
        if pair.max_len() > bound {
            continue;
        }
        let w = closure.walks();
        let (a, b) = (w.node_of(pair.p()), w.node_of(pair.q()));
        closure.union(a.expect("validated"), b.expect("validated"));
    }
    closure.saturate(config.exec);

    let missing = missing_pairs(&closure, config.check_len, config.max_walks);
    Ok(VerificationReport {
        verified: missing.is_empty(),
        missing,
        closure_size: closure.pair_count(),
        iterations: closure.rounds(),
        slack_used: slack,
    })
}

fn missing_pairs(closure: &Closure, check_len: usize, cap: usize) -> Vec<PathPair> {
    let w = closure.walks();
    let n = w.walk_count() as u32;
    // Node ids already follow (length, lexicographic) order.
    let mut groups: std::collections::BTreeMap<(usize, usize), Vec<u32>> = Default::default();
    for node in (0..n).take_while(|&x| w.len_of(x) <= check_len) {
        groups.entry(w.endpoints(node)).or_default().push(node);
    }
    let mut found: Vec<(u32, u32)> = Vec::new();
    'outer: for nodes in groups.values() {
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                if !closure.same_class(a, b) {
                    if found.len() == cap {
                        break 'outer;
                    }
                    found.push((a, b));
                }
            }
        }
    }
    found.sort_unstable();
    found
        .into_iter()
        .map(|(a, b)| PathPair::new(w.path_of(a), w.path_of(b)).expect("same endpoints"))
        .collect()
}
