//! End-to-end acceptance checks, one line per criterion.
//!
//! Run with `cargo test --test acceptance`; exits non-zero if any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{orthogonal_potentials, random_dag, random_digraph, random_scg, rng};
use pathinv::mapopt::{
    all_pairs_deviation, basis_residual, objective_with_gradient, optimize_network,
    random_orthogonal, sample_graph, synth_experiment, MapNetwork, Matrix, OptimizerSchedule,
    SynthConfig, Terms,
};
use pathinv::{
    dag_basis_canonical, path_invariance_basis, scg_basis_default, verify_basis_with, Execution,
    VerifyConfig,
};
use rand::Rng;
use rand_distr::StandardNormal;

struct Outcome {
    pass: bool,
    detail: String,
}

fn gaussian(rng: &mut impl Rng, dim: usize, sigma: f64) -> Matrix {
    Matrix::from_fn(dim, dim, |_, _| {
        sigma * rng.sample::<f64, _>(StandardNormal)
    })
}

fn within(elapsed: Duration, limit_secs: f64) -> bool {
    elapsed.as_secs_f64() < limit_secs
}

fn size_bounds() -> Outcome {
    let start = Instant::now();
    let mut violations = 0;
    let mut r = rng(1);
    for _ in 0..200 {
        let g = random_dag(&mut r, 10, 20);
        let b = dag_basis_canonical(&g).unwrap();
        if b.len() > (g.vertex_count() - 1) * g.edge_count() {
            violations += 1;
        }
    }
    for _ in 0..200 {
        let g = random_digraph(&mut r, 10, 25);
        if path_invariance_basis(&g).len() > g.vertex_count() * g.edge_count() {
            violations += 1;
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: violations == 0 && within(t, 5.0),
        detail: format!(
            "{violations} violations over 400 graphs in {:.2} s (limit 5 s)",
            t.as_secs_f64()
        ),
    }
}

fn basis_validity() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut retried = 0;
    let mut r = rng(2);
    for _ in 0..100 {
        let g = random_digraph(&mut r, 7, 14);
        let report =
            verify_basis_with(&g, &path_invariance_basis(&g), &VerifyConfig::for_graph(&g))
                .unwrap();
        if !report.verified {
            failures += 1;
        }
        if report.slack_used > g.vertex_count() {
            retried += 1;
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: failures == 0 && within(t, 60.0),
        detail: format!(
            "{failures} failures over 100 graphs, {retried} needed doubled slack, {:.2} s (limit 60 s)",
            t.as_secs_f64()
        ),
    }
}

fn consistency_propagates() -> Outcome {
    let sched = OptimizerSchedule {
        step_size: 2e-2,
        doubling_period: 30,
        lambda_stop: 1e12,
        step_decay: 0.75,
        ..Default::default()
    };
    let mut failures = 0;
    let (mut worst_basis, mut worst_all) = (0.0f64, 0.0f64);
    for seed in 0..20 {
        let mut r = rng(300 + seed);
        let g = sample_graph(6, 0.4, &mut r).unwrap();
        let y = orthogonal_potentials(&mut r, 6, 4);
        let net = MapNetwork::from_potentials(g.clone(), &y).unwrap();
        let mut x_in = net.maps().to_vec();
        let e = r.random_range(0..x_in.len());
        x_in[e] += gaussian(&mut r, 4, 0.5);
        let net = net.with_input(x_in).unwrap();
        let basis = path_invariance_basis(&g);
        let out = optimize_network(&net, &basis, &sched).unwrap().network;
        let on_basis = basis_residual(&out, &basis).unwrap().max_deviation;
        let everywhere = all_pairs_deviation(&out, 5, Execution::default()).max_deviation;
        worst_basis = worst_basis.max(on_basis);
        worst_all = worst_all.max(everywhere);
        if !(on_basis < 1e-6 && everywhere < 1e-4) {
            failures += 1;
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!(
            "{failures} failures over 20 instances; worst basis deviation {worst_basis:.1e}, worst all-pairs deviation {worst_all:.1e}"
        ),
    }
}

fn synchronization_improves() -> Outcome {
    let start = Instant::now();
    let sched = OptimizerSchedule {
        step_size: 2e-2,
        doubling_period: 40,
        ..Default::default()
    };
    let mut improved = 0;
    let mut ratios = Vec::new();
    for seed in 0..10 {
        let config = SynthConfig {
            seed,
            ..Default::default()
        };
        let report = synth_experiment(&config, &OptimizerSchedule { seed, ..sched })
            .unwrap()
            .report;
        let ratio = report.error_after / report.error_before;
        if ratio <= 0.5 {
            improved += 1;
        }
        ratios.push(format!("{ratio:.2}"));
    }
    let t = start.elapsed();
    Outcome {
        pass: improved >= 9 && within(t, 120.0),
        detail: format!(
            "{improved}/10 seeds at or below half the initial error (after/before: {}), {:.1} s (limit 120 s)",
            ratios.join(" "),
            t.as_secs_f64()
        ),
    }
}

fn degeneracy() -> Outcome {
    let mut mismatches = 0;
    let mut r = rng(5);
    for _ in 0..50 {
        let g = random_dag(&mut r, 10, 20);
        if path_invariance_basis(&g).pair_set() != dag_basis_canonical(&g).unwrap().pair_set() {
            mismatches += 1;
        }
    }
    for _ in 0..50 {
        let g = random_scg(&mut r, 10, 12);
        if path_invariance_basis(&g).pair_set() != scg_basis_default(&g).unwrap().0.pair_set() {
            mismatches += 1;
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!("{mismatches} mismatches over 100 graphs"),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    std::fs::write(path("g.txt"), "a b\nb c\nc a\nc d\nd e\ne d\na e\nb d\n").unwrap();
    let runs: Vec<(&str, Vec<String>, Option<String>)> = vec![
        (
            "basis",
            vec![
                "basis".into(),
                path("g.txt"),
                "--out".into(),
                path("b.json"),
            ],
            Some(path("b.json")),
        ),
        (
            "verify",
            vec!["verify".into(), path("g.txt"), path("b.json")],
            None,
        ),
        ("stats", vec!["stats".into(), path("g.txt")], None),
        (
            "synth",
            vec![
                "synth".into(),
                "--vertices".into(),
                "8".into(),
                "--dim".into(),
                "4".into(),
                "--seed".into(),
                "3".into(),
                "--dump".into(),
                path("d.json"),
            ],
            Some(path("d.json")),
        ),
    ];
    let mut differing = Vec::new();
    for (name, args, file) in &runs {
        let once = || {
            let o = Command::new(env!("CARGO_BIN_EXE_pathinv"))
                .args(args)
                .output()
                .unwrap();
            let written = file.as_ref().map(|f| std::fs::read(f).unwrap());
            (o.status.code(), o.stdout, o.stderr, written)
        };
        let (a, b) = (once(), once());
        if a != b || a.0 != Some(0) {
            differing.push(*name);
        }
    }
    Outcome {
        pass: differing.is_empty(),
        detail: if differing.is_empty() {
            "basis, verify, stats and synth byte-identical across two runs".into()
        } else {
            format!("differing or failing: {}", differing.join(", "))
        },
    }
}

fn gradient_check() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..10 {
        let mut r = rng(700 + seed);
        let dim = 3;
        let g = random_digraph(&mut r, 5, 9);
        let x_in: Vec<Matrix> = (0..g.edge_count())
            .map(|_| random_orthogonal(dim, &mut r))
            .collect();
        // keep every entry at least 0.05 away from its input so the L1 part is smooth
        let x: Vec<Matrix> = x_in
            .iter()
            .map(|a| a + gaussian(&mut r, dim, 0.3).map(|d| d + 0.05f64.copysign(d)))
            .collect();
        let net = MapNetwork::new(g.clone(), dim, x.clone())
            .unwrap()
            .with_input(x_in.clone())
            .unwrap();
        let terms = Terms::new(&net, &path_invariance_basis(&g)).unwrap();
        let lambda = r.random_range(0.1..10.0);
        let f = |x: &[Matrix]| {
            objective_with_gradient(x, &x_in, &terms, dim, lambda, Execution::Sequential)
        };
        let (_, grad) = f(&x);
        let h = 1e-6;
        let (mut diff, mut norm) = (0.0, 0.0);
        for e in 0..x.len() {
            for k in 0..dim * dim {
                let mut plus = x.clone();
                plus[e][k] += h;
                let mut minus = x.clone();
                minus[e][k] -= h;
                let fd = (f(&plus).0 - f(&minus).0) / (2.0 * h);
                diff += (grad[e][k] - fd).powi(2);
                norm += fd * fd;
            }
        }
        worst = worst.max((diff / norm).sqrt());
    }
    Outcome {
        pass: worst < 1e-5,
        detail: format!("worst relative error {worst:.1e} over 10 instances"),
    }
}

type Check = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("C1 size bounds", size_bounds),
        ("C2 basis validity", basis_validity),
        (
            "C3 basis consistency implies global consistency",
            consistency_propagates,
        ),
        ("C4 synthetic synchronization", synchronization_improves),
        ("C5 degeneracy to dag and scg bases", degeneracy),
        ("C6 CLI determinism", determinism),
        ("C7 gradient correctness", gradient_check),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {name}: {} [{:.1} s]",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
