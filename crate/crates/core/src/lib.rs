//! Path-invariance bases for directed graphs.
//!
//! A path-invariance basis is a small set of path pairs from which every
//! pair of equal-endpoint walks follows by merge, stitch and cut. A map
//! network that agrees on the basis pairs agrees on all of them.
//!
//! - [`dag_basis`], [`scg_basis`] and [`general_basis`] construct bases for
//!   acyclic, strongly connected and arbitrary graphs.
//! - [`oracle`] checks a basis by computing its bounded closure.
//! - [`mapopt`] enforces a basis on matrix-valued map networks.

pub mod basis;
pub mod dag_basis;
pub mod error;
pub mod exec;
pub mod general_basis;
pub mod graph;
pub mod io;
pub mod mapopt;
pub mod oracle;
pub mod scc;
pub mod scg_basis;

pub use basis::{Basis, BasisEntry, Provenance};
pub use dag_basis::{dag_basis, dag_basis_canonical, topological_order, TopologicalOrder};
pub use error::{Error, Result};
pub use exec::Execution;
pub use general_basis::{basis_size_bound, path_invariance_basis, path_invariance_basis_with};
pub use graph::{build_graph, DirectedGraph, Path, PathPair, VertexId};
pub use oracle::{verify_basis, verify_basis_with, VerificationReport, VerifyConfig};
pub use scc::{contract_graph, tarjan_scc, ContractedDag, SccDecomposition};
pub use scg_basis::{scg_basis, scg_basis_default};
