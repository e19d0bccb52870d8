//! Matrix map networks and the basis-regularized synchronization objective.

pub mod network;
pub mod optimize;
pub mod synth;

pub use network::{
    all_pairs_deviation, basis_residual, basis_residual_with, path_map, AllPairs, MapNetwork,
    Matrix, Residual,
};
pub use optimize::{
    objective, objective_with_gradient, optimize_network, optimize_network_with, regularizer_value,
    regularizer_with_gradient, OptimizeOutcome, OptimizerSchedule, Terms,
};
pub use synth::{
    dump_json, random_orthogonal, sample_graph, synth_experiment, synth_experiment_with,
    Experiment, ExperimentReport, SynthConfig,
};
