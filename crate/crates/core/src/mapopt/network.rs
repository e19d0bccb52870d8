//! Matrix-valued map networks and composite maps.

use nalgebra::DMatrix;

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{DirectedGraph, Path};

pub type Matrix = DMatrix<f64>;

/// A square matrix on every edge, optionally paired with observed maps.
#[derive(Debug, Clone, PartialEq)]
pub struct MapNetwork {
    graph: DirectedGraph,
    dim: usize,
    x: Vec<Matrix>,
    x_in: Option<Vec<Matrix>>,
}

fn check_dims(dim: usize, maps: &[Matrix]) -> Result<()> {
    for (edge, m) in maps.iter().enumerate() {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                edge,
                rows: m.nrows(),
                cols: m.ncols(),
                dim,
            });
        }
    }
    Ok(())
}

impl MapNetwork {
    /// `x[e]` is the map on `graph.edges()[e]`.
    pub fn new(graph: DirectedGraph, dim: usize, x: Vec<Matrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if x.len() < graph.edge_count() {
            let (u, v) = graph.edges()[x.len()];
            return Err(Error::MissingEdgeMatrix(u, v));
        }
        if x.len() > graph.edge_count() {
            return Err(Error::InvalidArgument("more maps than edges".into()));
        }
        check_dims(dim, &x)?;
        Ok(MapNetwork {
            graph,
            dim,
            x,
            x_in: None,
        })
    }

    pub fn identity(graph: DirectedGraph, dim: usize) -> Self {
        let x = vec![Matrix::identity(dim, dim); graph.edge_count()];
        MapNetwork {
            graph,
            dim,
            x,
            x_in: None,
        }
    }

    /// `X_uv = Y_v · Y_u⁻¹`, which is path-invariant by construction.
    pub fn from_potentials(graph: DirectedGraph, potentials: &[Matrix]) -> Result<Self> {
        if potentials.len() != graph.vertex_count() || potentials.is_empty() {
            return Err(Error::InvalidArgument(
                "one potential per vertex required".into(),
            ));
        }
        let dim = potentials[0].nrows();
        check_dims(dim, potentials)?;
        let inverses = potentials
            .iter()
            .map(|y| {
                y.clone()
                    .try_inverse()
                    .ok_or_else(|| Error::InvalidArgument("singular potential".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let x = graph
            .edges()
            .iter()
            .map(|&(u, v)| &potentials[v] * &inverses[u])
            .collect();
        MapNetwork::new(graph, dim, x)
    }

    /// Attaches observed maps; the optimizer starts from them.
    pub fn with_input(mut self, x_in: Vec<Matrix>) -> Result<Self> {
        if x_in.len() != self.graph.edge_count() {
            return Err(Error::InvalidArgument(
                "one observed map per edge required".into(),
            ));
        }
        check_dims(self.dim, &x_in)?;
        self.x_in = Some(x_in);
        Ok(self)
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.x
    }

    pub fn input(&self) -> Option<&[Matrix]> {
        self.x_in.as_deref()
    }

    pub fn map(&self, u: usize, v: usize) -> Result<&Matrix> {
        self.graph
            .edge_id(u, v)
            .map(|e| &self.x[e])
            .ok_or(Error::MissingEdgeMatrix(u, v))
    }

    pub fn set_map(&mut self, u: usize, v: usize, m: Matrix) -> Result<()> {
        let e = self
            .graph
            .edge_id(u, v)
            .ok_or(Error::MissingEdgeMatrix(u, v))?;
        check_dims(self.dim, std::slice::from_ref(&m))?;
        self.x[e] = m;
        Ok(())
    }

    pub(crate) fn maps_mut(&mut self) -> &mut [Matrix] {
        &mut self.x
    }

    /// Edge ids along `p`.
    pub(crate) fn edge_ids(&self, p: &Path) -> Result<Vec<usize>> {
        p.edges()
            .map(|(u, v)| {
                self.graph
                    .edge_id(u, v)
                    .ok_or(Error::MissingEdgeMatrix(u, v))
            })
            .collect()
    }
}

/// `X_{k-1,k} ··· X_{0,1}` along `p`; the identity for an empty path.
pub fn path_map(net: &MapNetwork, p: &Path) -> Result<Matrix> {
    let ids = net.edge_ids(p)?;
    Ok(product(net.maps(), &ids, net.dim()))
}

pub(crate) fn product(x: &[Matrix], edges: &[usize], dim: usize) -> Matrix {
    let mut acc = Matrix::identity(dim, dim);
    for &e in edges {
        acc = &x[e] * acc;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    /// Sum of squared Frobenius deviations.
    pub total: f64,
    /// Largest single-pair Frobenius deviation.
    pub max_deviation: f64,
}

pub fn basis_residual(net: &MapNetwork, basis: &Basis) -> Result<Residual> {
    basis_residual_with(net, basis, Execution::default())
}

pub fn basis_residual_with(net: &MapNetwork, basis: &Basis, exec: Execution) -> Result<Residual> {
    let pairs: Vec<_> = basis.pairs().collect();
    let devs = exec.map(&pairs, |pair| -> Result<f64> {
        let d = path_map(net, pair.p())? - path_map(net, pair.q())?;
        Ok(d.norm())
    });
    let mut r = Residual {
        total: 0.0,
        max_deviation: 0.0,
    };
    for d in devs {
        let d = d?;
        r.total += d * d;
        r.max_deviation = r.max_deviation.max(d);
    }
    Ok(r)
}

/// Deviation statistics over every pair of walks with equal endpoints and
/// at most `max_len` edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllPairs {
    pub pairs: u64,
    pub sum_squared: f64,
    pub max_deviation: f64,
}

pub fn all_pairs_deviation(net: &MapNetwork, max_len: usize, exec: Execution) -> AllPairs {
    let g = net.graph();
    let per_start = exec.map_range(0..g.vertex_count(), |u| {
        let mut by_end: Vec<Vec<Matrix>> = vec![Vec::new(); g.vertex_count()];
        collect_walk_maps(
            net,
            u,
            Matrix::identity(net.dim(), net.dim()),
            max_len,
            &mut by_end,
        );
        let mut stats = AllPairs {
            pairs: 0,
            sum_squared: 0.0,
            max_deviation: 0.0,
        };
        for maps in by_end.iter().filter(|m| m.len() > 1) {
            let k = maps.len();
            // Σ_{i<j} ‖A_i − A_j‖² = k Σ ‖A_i − mean‖²
            let mean = maps
                .iter()
                .fold(Matrix::zeros(net.dim(), net.dim()), |acc, a| acc + a)
                / k as f64;
            let spread: f64 = maps.iter().map(|a| (a - &mean).norm_squared()).sum();
            stats.sum_squared += k as f64 * spread;
            stats.pairs += (k * (k - 1) / 2) as u64;
            for i in 0..k {
                for j in i + 1..k {
                    stats.max_deviation = stats.max_deviation.max((&maps[i] - &maps[j]).norm());
                }
            }
        }
        stats
    });
    per_start.into_iter().fold(
        AllPairs {
            pairs: 0,
            sum_squared: 0.0,
            max_deviation: 0.0,
        },
        |acc, s| AllPairs {
            pairs: acc.pairs + s.pairs,
            sum_squared: acc.sum_squared + s.sum_squared,
            max_deviation: acc.max_deviation.max(s.max_deviation),
        },
    )
}

fn collect_walk_maps(
    net: &MapNetwork,
    at: usize,
    acc: Matrix,
    remaining: usize,
    by_end: &mut [Vec<Matrix>],
) {
    if remaining > 0 {
        for &w in net.graph().out_neighbors(at) {
            let e = net.graph().edge_id(at, w).expect("adjacent");
            collect_walk_maps(net, w, &net.maps()[e] * &acc, remaining - 1, by_end);
        }
    }
    by_end[at].push(acc);
}
