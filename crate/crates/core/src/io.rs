//! Edge-list and JSON formats used by the command line tool.

use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::basis::{Basis, Provenance};
use crate::error::{Error, Result};
use crate::graph::{build_graph, DirectedGraph, Path, PathPair};

/// Parses `TAIL HEAD` lines. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_edge_list(text: &str) -> Result<DirectedGraph> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [tail, head] => {
                if tail == head {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("explicit self-loop on `{tail}`"),
                    });
                }
                edges.push((*tail, *head));
            }
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected `TAIL HEAD`, found {} fields", fields.len()),
                })
            }
        }
    }
    build_graph(edges)
}

pub fn read_graph(path: &FsPath) -> Result<DirectedGraph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct PairRecord {
    p: Vec<String>,
    q: Vec<String>,
    tag: String,
}

fn path_labels(g: &DirectedGraph, p: &Path) -> Vec<String> {
    p.vertices()
        .iter()
        .map(|&v| g.label(v).to_owned())
        .collect()
}

/// `[{"p": [...], "q": [...], "tag": "..."}]` with vertex labels.
pub fn basis_to_json(g: &DirectedGraph, basis: &Basis) -> String {
    let records: Vec<PairRecord> = basis
        .entries()
        .iter()
        .map(|e| PairRecord {
            p: path_labels(g, e.pair.p()),
            q: path_labels(g, e.pair.q()),
            tag: e.tag.as_str().to_owned(),
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("plain data serializes")
}

/// Reads a basis written by [`basis_to_json`], checking every path against `g`.
pub fn basis_from_json(g: &DirectedGraph, text: &str) -> Result<Basis> {
    let records: Vec<PairRecord> = serde_json::from_str(text)?;
    let mut basis = Basis::new();
    for r in records {
        let tag = Provenance::parse(&r.tag)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown basis tag `{}`", r.tag)))?;
        let p = g.path_from_labels(&r.p)?;
        let q = g.path_from_labels(&r.q)?;
        basis.push(PathPair::new(p, q)?, tag);
    }
    Ok(basis)
}

pub fn read_basis(g: &DirectedGraph, path: &FsPath) -> Result<Basis> {
    basis_from_json(g, &std::fs::read_to_string(path)?)
}
