use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pathinv::mapopt::{dump_json, synth_experiment_with, OptimizerSchedule, SynthConfig};
use pathinv::oracle::{verify_basis_with, VerifyConfig, DEFAULT_MAX_WALKS};
use pathinv::{
    basis_size_bound, contract_graph, io, path_invariance_basis_with, tarjan_scc, Error, Execution,
};

#[derive(Parser)]
#[command(
    name = "pathinv",
    version,
    about = "Path-invariance bases for directed map networks"
)]
struct Cli {
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a path-invariance basis and check it against the size bound.
    Basis {
        graph: PathBuf,
        /// Write the basis as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a basis induces every path pair up to a length.
    Verify {
        graph: PathBuf,
        basis: PathBuf,
        /// Longest walk checked [default: |V|].
        #[arg(long)]
        check_len: Option<usize>,
        /// Extra walk length allowed inside derivations [default: |V|].
        #[arg(long)]
        slack: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_WALKS)]
        max_walks: usize,
    },
    /// Synchronize noisy rotations on a random graph.
    Synth {
        #[arg(long, default_value_t = 12)]
        vertices: usize,
        #[arg(long, default_value_t = 0.35)]
        edge_prob: f64,
        #[arg(long, default_value_t = 10)]
        dim: usize,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        #[arg(long, default_value_t = 0.2)]
        outliers: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = OptimizerSchedule::default().step_size)]
        step_size: f64,
        #[arg(long, default_value_t = OptimizerSchedule::default().step_decay)]
        step_decay: f64,
        #[arg(long, default_value_t = OptimizerSchedule::default().doubling_period)]
        doubling_period: usize,
        #[arg(long, default_value_t = OptimizerSchedule::default().lambda_stop)]
        lambda_stop: f64,
        /// Write every edge's optimized, observed and true map as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Print vertex, edge, component and contracted-edge counts.
    Stats { graph: PathBuf },
}

enum Outcome {
    Ok,
    NotVerified,
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Basis { graph, out } => {
            let g = io::read_graph(&graph)?;
            let basis = path_invariance_basis_with(&g, exec);
            let bound = basis_size_bound(&g);
            println!("pairs={} bound={}", basis.len(), bound);
            println!("within_bound={}", basis.len() <= bound);
            if let Some(out) = out {
                std::fs::write(out, io::basis_to_json(&g, &basis) + "\n")?;
            }
            Ok(Outcome::Ok)
        }
        Command::Verify {
            graph,
            basis,
            check_len,
            slack,
            max_walks,
        } => {
            let g = io::read_graph(&graph)?;
            let basis = io::read_basis(&g, &basis)?;
            let mut config = VerifyConfig::for_graph(&g);
            config.check_len = check_len.unwrap_or(config.check_len);
            config.slack = slack.unwrap_or(config.slack);
            config.max_walks = max_walks;
            config.exec = exec;
            let report = verify_basis_with(&g, &basis, &config)?;
            println!("{}", report.to_json(&g));
            Ok(if report.verified {
                Outcome::Ok
            } else {
                Outcome::NotVerified
            })
        }
        Command::Synth {
            vertices,
            edge_prob,
            dim,
            noise,
            outliers,
            seed,
            step_size,
            step_decay,
            doubling_period,
            lambda_stop,
            dump,
        } => {
            let config = SynthConfig {
                vertices,
                edge_prob,
                dim,
                noise_sigma: noise,
                outlier_frac: outliers,
                seed,
            };
            let sched = OptimizerSchedule {
                step_size,
                step_decay,
                doubling_period,
                lambda_stop,
                seed,
                ..Default::default()
            };
            let exp = synth_experiment_with(&config, &sched, exec)?;
            println!("{}", serde_json::to_string_pretty(&exp.report)?);
            if let Some(dump) = dump {
                std::fs::write(dump, serde_json::to_string(&dump_json(&exp))? + "\n")?;
            }
            Ok(Outcome::Ok)
        }
        Command::Stats { graph } => {
            let g = io::read_graph(&graph)?;
            let scc = tarjan_scc(&g);
            let contracted = contract_graph(&g, &scc);
            println!("vertices={}", g.vertex_count());
            println!("edges={}", g.edge_count());
            println!("sccs={}", scc.component_count());
            println!("dag_edges={}", contracted.dag.edge_count());
            Ok(Outcome::Ok)
        }
    }
}

fn report_error(kind: &str, message: &str) {
    eprintln!(
        "{}",
        serde_json::json!({ "error": kind, "message": message })
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            report_error("UsageError", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::NotVerified) => ExitCode::from(1),
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
