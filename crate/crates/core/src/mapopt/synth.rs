//! Synthetic map synchronization: noisy relative rotations on a random graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::general_basis::path_invariance_basis_with;
use crate::graph::DirectedGraph;

use super::network::{all_pairs_deviation, basis_residual_with, MapNetwork, Matrix};
use super::optimize::{optimize_network_with, OptimizerSchedule};

pub const MAX_GRAPH_ATTEMPTS: usize = 1000;
/// Walk length for the all-pairs residual.
pub const ALL_PAIRS_LEN: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub vertices: usize,
    pub edge_prob: f64,
    pub dim: usize,
    pub noise_sigma: f64,
    pub outlier_frac: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            vertices: 12,
            edge_prob: 0.35,
            dim: 10,
            noise_sigma: 0.05,
            outlier_frac: 0.2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub basis_size: usize,
    pub error_before: f64,
    pub error_after: f64,
    pub basis_residual_final: f64,
    pub all_pairs_residual_final: f64,
    pub epochs: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub report: ExperimentReport,
    /// Optimized maps, with the noisy observations attached as input.
    pub network: MapNetwork,
    pub ground_truth: Vec<Matrix>,
}

/// Directed Erdős–Rényi graph over ordered pairs, resampled until weakly
/// connected.
pub fn sample_graph(n: usize, edge_prob: f64, rng: &mut impl Rng) -> Result<DirectedGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidArgument(
            "edge probability must lie in [0, 1]".into(),
        ));
    }
    for _ in 0..MAX_GRAPH_ATTEMPTS {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(edge_prob))
            .collect();
        let g = DirectedGraph::from_edges(n, &edges)?;
        if g.weak_components().len() == 1 {
            return Ok(g);
        }
    }
    Err(Error::GraphSamplingFailed(MAX_GRAPH_ATTEMPTS))
}

pub fn gaussian_matrix(dim: usize, sigma: f64, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(dim, dim, |_, _| {
        sigma * rng.sample::<f64, _>(StandardNormal)
    })
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian, signs fixed by R's
/// diagonal).
pub fn random_orthogonal(dim: usize, rng: &mut impl Rng) -> Matrix {
    let qr = gaussian_matrix(dim, 1.0, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

fn mean_error(x: &[Matrix], truth: &[Matrix]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    x.iter()
        .zip(truth)
        .map(|(a, b)| (a - b).norm())
        .sum::<f64>()
        / x.len() as f64
}

pub fn synth_experiment(config: &SynthConfig, sched: &OptimizerSchedule) -> Result<Experiment> {
    synth_experiment_with(config, sched, Execution::default())
}

pub fn synth_experiment_with(
    config: &SynthConfig,
    sched: &OptimizerSchedule,
    exec: Execution,
) -> Result<Experiment> {
    if !(0.0..1.0).contains(&config.outlier_frac) {
        return Err(Error::InvalidArgument(
            "outlier fraction must lie in [0, 1)".into(),
        ));
    }
    if config.dim == 0 || config.noise_sigma.is_nan() || config.noise_sigma < 0.0 {
        return Err(Error::InvalidArgument(
            "dimension and noise must be non-negative".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let g = sample_graph(config.vertices, config.edge_prob, &mut rng)?;
    let potentials: Vec<Matrix> = (0..config.vertices)
        .map(|_| random_orthogonal(config.dim, &mut rng))
        .collect();
    let truth: Vec<Matrix> = g
        .edges()
        .iter()
        .map(|&(u, v)| &potentials[v] * potentials[u].transpose())
        .collect();

    let mut observed: Vec<Matrix> = truth
        .iter()
        .map(|x| {
            if config.noise_sigma > 0.0 {
                x + gaussian_matrix(config.dim, config.noise_sigma, &mut rng)
            } else {
                x.clone()
            }
        })
        .collect();
    let outliers = (config.outlier_frac * g.edge_count() as f64).round() as usize;
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(&mut rng);
    for &e in &order[..outliers] {
        observed[e] = random_orthogonal(config.dim, &mut rng);
    }

    let basis = path_invariance_basis_with(&g, exec);
    let net = MapNetwork::new(g, config.dim, observed.clone())?.with_input(observed)?;
    let error_before = mean_error(net.maps(), &truth);
    let outcome = optimize_network_with(&net, &basis, sched, exec)?;
    let optimized = outcome.network;
    let report = ExperimentReport {
        basis_size: basis.len(),
        error_before,
        error_after: mean_error(optimized.maps(), &truth),
        basis_residual_final: basis_residual_with(&optimized, &basis, exec)?.total,
        all_pairs_residual_final: all_pairs_deviation(&optimized, ALL_PAIRS_LEN, exec).sum_squared,
        epochs: outcome.loss_trace.len(),
        seed: config.seed,
    };
    Ok(Experiment {
        report,
        network: optimized,
        ground_truth: truth,
    })
}

/// Row-major dump of every edge's optimized, observed and true map.
pub fn dump_json(exp: &Experiment) -> serde_json::Value {
    let g = exp.network.graph();
    let rows = |m: &Matrix| -> Vec<f64> {
        (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)]))
            .collect()
    };
    let input = exp
        .network
        .input()
        .expect("experiments attach their observations");
    let edges: Vec<serde_json::Value> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            serde_json::json!({
                "tail": g.label(u),
                "head": g.label(v),
                "optimized": rows(&exp.network.maps()[e]),
                "observed": rows(&input[e]),
                "ground_truth": rows(&exp.ground_truth[e]),
            })
        })
        .collect();
    serde_json::json!({
        "dim": exp.network.dim(),
        "report": exp.report,
        "edges": edges,
    })
}
