//! Ordered collections of path pairs with per-pair provenance.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{Path, PathPair, VertexId};

/// Which construction step produced a basis pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Edge insertion on an acyclic graph.
    Dag,
    /// Back edge of the DFS on a strongly connected component.
    ScgCycle,
    /// Spanning-tree pair between parallel cross edges.
    CrossEdge,
    /// Contracted-DAG pair lifted to the original graph.
    Lifted,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Dag => "dag",
            Provenance::ScgCycle => "scg-cycle",
            Provenance::CrossEdge => "cross-edge",
            Provenance::Lifted => "lifted",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "dag" => Provenance::Dag,
            "scg-cycle" => Provenance::ScgCycle,
            "cross-edge" => Provenance::CrossEdge,
            "lifted" => Provenance::Lifted,
            _ => return None,
        })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisEntry {
    pub pair: PathPair,
    pub tag: Provenance,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Basis {
    entries: Vec<BasisEntry>,
}

impl Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, pair: PathPair, tag: Provenance) {
        self.entries.push(BasisEntry { pair, tag });
    }

    pub fn extend(&mut self, other: Basis) {
        self.entries.extend(other.entries);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn pairs(&self) -> impl ExactSizeIterator<Item = &PathPair> + '_ {
        self.entries.iter().map(|e| &e.pair)
    }

    /// The pairs as a set, ignoring order and provenance.
    pub fn pair_set(&self) -> BTreeSet<PathPair> {
        self.pairs().cloned().collect()
    }

    /// Rewrites every vertex id through `map`, e.g. from a subgraph's local
    /// ids back to the parent graph.
    pub fn relabeled(&self, map: &[VertexId]) -> Basis {
        let remap =
            |p: &Path| Path::new(p.vertices().iter().map(|&v| map[v]).collect()).expect("nonempty");
        Basis {
            entries: self
                .entries
                .iter()
                .map(|e| BasisEntry {
                    pair: PathPair::new(remap(e.pair.p()), remap(e.pair.q()))
                        .expect("relabeling preserves shared endpoints"),
                    tag: e.tag,
                })
                .collect(),
        }
    }
}

impl FromIterator<BasisEntry> for Basis {
    fn from_iter<I: IntoIterator<Item = BasisEntry>>(iter: I) -> Self {
        Basis {
            entries: iter.into_iter().collect(),
        }
    }
}
