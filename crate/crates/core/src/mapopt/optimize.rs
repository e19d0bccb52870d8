//! Joint objective `Σ ‖X_e − X_e^in‖₁ + λ Σ ‖f_p − f_q‖_F²` and its ADAM
//! minimizer under a doubling λ schedule.
//!
//! Each epoch takes one ADAM step, halved until the objective at the current
//! λ does not increase; if no halving helps the maps stay where they are.

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::exec::Execution;

use super::network::{product, MapNetwork, Matrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSchedule {
    pub lambda_init: f64,
    /// Epochs run at `lambda_init` before the first doubling.
    pub epochs_initial: usize,
    pub doubling_period: usize,
    pub lambda_stop: f64,
    pub step_size: f64,
    /// Factor applied to the step size at every doubling of λ; 1 keeps it
    /// constant.
    pub step_decay: f64,
    pub seed: u64,
}

impl Default for OptimizerSchedule {
    fn default() -> Self {
        OptimizerSchedule {
            lambda_init: 1e-2,
            epochs_initial: 40,
            doubling_period: 10,
            lambda_stop: 1e3,
            step_size: 1e-3,
            step_decay: 1.0,
            seed: 0,
        }
    }
}

impl OptimizerSchedule {
    pub fn validate(&self) -> Result<()> {
        let ok = self.lambda_init > 0.0
            && self.lambda_stop > self.lambda_init
            && self.step_size > 0.0
            && self.step_decay > 0.0
            && self.step_decay <= 1.0
            && self.doubling_period > 0
            && self.lambda_init.is_finite()
            && self.lambda_stop.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "invalid optimizer schedule {self:?}"
            )))
        }
    }

    /// `(λ, step size)` for every epoch, in order.
    pub fn epochs(&self) -> Vec<(f64, f64)> {
        let mut out = vec![(self.lambda_init, self.step_size); self.epochs_initial];
        let mut lambda = self.lambda_init * 2.0;
        let mut step = self.step_size * self.step_decay;
        while lambda < self.lambda_stop {
            out.extend(std::iter::repeat_n((lambda, step), self.doubling_period));
            lambda *= 2.0;
            step *= self.step_decay;
        }
        out
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.epochs().into_iter().map(|(l, _)| l).collect()
    }
}

/// Edge-id sequences of every basis pair, resolved once.
#[derive(Debug, Clone)]
pub struct Terms {
    pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Terms {
    pub fn new(net: &MapNetwork, basis: &Basis) -> Result<Self> {
        let pairs = basis
            .pairs()
            .map(|pair| Ok((net.edge_ids(pair.p())?, net.edge_ids(pair.q())?)))
            .collect::<Result<_>>()?;
        Ok(Terms { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Value and gradient of the λ-free regularizer `Σ ‖f_p − f_q‖_F²`.
pub fn regularizer_with_gradient(
    x: &[Matrix],
    terms: &Terms,
    dim: usize,
    exec: Execution,
) -> (f64, Vec<Matrix>) {
    let per_pair = exec.map(&terms.pairs, |(p, q)| {
        let (rp, lp) = partial_products(x, p, dim);
        let (rq, lq) = partial_products(x, q, dim);
        let d = &rp[p.len()] - &rq[q.len()];
        let mut contrib = Vec::with_capacity(p.len() + q.len());
        for (i, &e) in p.iter().enumerate() {
            contrib.push((e, (lp[i + 1].transpose() * &d * rp[i].transpose()) * 2.0));
        }
        for (i, &e) in q.iter().enumerate() {
            contrib.push((e, (lq[i + 1].transpose() * &d * rq[i].transpose()) * -2.0));
        }
        (d.norm_squared(), contrib)
    });
    let mut value = 0.0;
    let mut grad = vec![Matrix::zeros(dim, dim); x.len()];
    for (r, contrib) in per_pair {
        value += r;
        for (e, g) in contrib {
            grad[e] += g;
        }
    }
    (value, grad)
}

/// `Σ ‖f_p − f_q‖_F²` alone.
pub fn regularizer_value(x: &[Matrix], terms: &Terms, dim: usize, exec: Execution) -> f64 {
    exec.map(&terms.pairs, |(p, q)| {
        (product(x, p, dim) - product(x, q, dim)).norm_squared()
    })
    .into_iter()
    .sum()
}

/// `right[i]` is the product of the first `i` edges, `left[i]` the product
/// of the edges after the `i`-th, so `f = left[i] · X_i · right[i - 1]`.
fn partial_products(x: &[Matrix], edges: &[usize], dim: usize) -> (Vec<Matrix>, Vec<Matrix>) {
    let k = edges.len();
    let mut right = Vec::with_capacity(k + 1);
    right.push(Matrix::identity(dim, dim));
    for (i, &e) in edges.iter().enumerate() {
        right.push(&x[e] * &right[i]);
    }
    let mut left = vec![Matrix::identity(dim, dim); k + 1];
    for i in (0..k).rev() {
        left[i] = &left[i + 1] * &x[edges[i]];
    }
    (right, left)
}

fn data_term(x: &[Matrix], x_in: &[Matrix]) -> f64 {
    x.iter().zip(x_in).map(|(a, b)| (a - b).abs().sum()).sum()
}

/// Objective at the given λ.
pub fn objective(net: &MapNetwork, terms: &Terms, lambda: f64, exec: Execution) -> Result<f64> {
    let x_in = net
        .input()
        .ok_or_else(|| Error::InvalidArgument("network has no input maps".into()))?;
    let (reg, _) = regularizer_with_gradient(net.maps(), terms, net.dim(), exec);
    Ok(data_term(net.maps(), x_in) + lambda * reg)
}

/// Objective value and a subgradient.
///
/// Where `X = X^in` elementwise the L1 part contributes the element of
/// `[-1, 1]` that cancels as much of the smooth gradient as possible, so
/// a point that is already optimal stays put.
pub fn objective_with_gradient(
    x: &[Matrix],
    x_in: &[Matrix],
    terms: &Terms,
    dim: usize,
    lambda: f64,
    exec: Execution,
) -> (f64, Vec<Matrix>) {
    let (reg, mut grad) = regularizer_with_gradient(x, terms, dim, exec);
    for ((g, a), b) in grad.iter_mut().zip(x).zip(x_in) {
        *g *= lambda;
        g.zip_zip_apply(a, b, |gi, ai, bi| {
            let d = ai - bi;
            *gi += if d > 0.0 {
                1.0
            } else if d < 0.0 {
                -1.0
            } else {
                (-*gi).clamp(-1.0, 1.0)
            };
        });
    }
    (data_term(x, x_in) + lambda * reg, grad)
}

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub network: MapNetwork,
    /// Objective before each epoch's step, at that epoch's λ.
    pub loss_trace: Vec<f64>,
    pub lambdas: Vec<f64>,
}

impl OptimizeOutcome {
    pub fn epochs(&self) -> usize {
        self.loss_trace.len()
    }
}

pub fn optimize_network(
    net: &MapNetwork,
    basis: &Basis,
    sched: &OptimizerSchedule,
) -> Result<OptimizeOutcome> {
    optimize_network_with(net, basis, sched, Execution::default())
}

pub fn optimize_network_with(
    net: &MapNetwork,
    basis: &Basis,
    sched: &OptimizerSchedule,
    exec: Execution,
) -> Result<OptimizeOutcome> {
    sched.validate()?;
    let x_in = net
        .input()
        .ok_or_else(|| Error::InvalidArgument("network has no input maps".into()))?
        .to_vec();
    let terms = Terms::new(net, basis)?;
    let dim = net.dim();
    let mut out = net.clone();
    out.maps_mut().clone_from_slice(&x_in);

    const BETA1: f64 = 0.9;
    const BETA2: f64 = 0.999;
    const EPS: f64 = 1e-8;
    const MAX_HALVINGS: usize = 12;
    let mut m1 = vec![Matrix::zeros(dim, dim); x_in.len()];
    let mut m2 = vec![Matrix::zeros(dim, dim); x_in.len()];
    let plan = sched.epochs();
    let mut loss_trace = Vec::with_capacity(plan.len());
    let mut proposal = out.maps().to_vec();
    for (epoch, &(lambda, step)) in plan.iter().enumerate() {
        let (loss, grad) = objective_with_gradient(out.maps(), &x_in, &terms, dim, lambda, exec);
        if !loss.is_finite() {
            return Err(Error::Divergence(epoch));
        }
        loss_trace.push(loss);
        let t = (epoch + 1) as i32;
        let (c1, c2) = (1.0 - BETA1.powi(t), 1.0 - BETA2.powi(t));
        let mut direction = Vec::with_capacity(grad.len());
        for ((g, a), b) in grad.iter().zip(&mut m1).zip(&mut m2) {
            *a = &*a * BETA1 + g * (1.0 - BETA1);
            *b = &*b * BETA2 + g.component_mul(g) * (1.0 - BETA2);
            direction.push(a.zip_map(b, |ai, bi| (ai / c1) / ((bi / c2).sqrt() + EPS)));
        }
        // Backtrack so the objective never rises within a λ phase.
        let mut scale = step;
        for _ in 0..MAX_HALVINGS {
            for ((p, x), d) in proposal.iter_mut().zip(out.maps()).zip(&direction) {
                p.copy_from(x);
                *p -= d * scale;
            }
            let candidate = data_term(&proposal, &x_in)
                + lambda * regularizer_value(&proposal, &terms, dim, exec);
            if candidate <= loss {
                out.maps_mut().clone_from_slice(&proposal);
                break;
            }
            scale *= 0.5;
        }
    }
    let lambdas = plan.into_iter().map(|(l, _)| l).collect();
    Ok(OptimizeOutcome {
        network: out,
        loss_trace,
        lambdas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_schedule_shape() {
        let l = OptimizerSchedule::default().lambdas();
        assert_eq!(l[0], 1e-2);
        assert_eq!(l[39], 1e-2);
        assert_eq!(l[40], 2e-2);
        assert_eq!(l[49], 2e-2);
        assert_eq!(l[50], 4e-2);
        assert!(*l.last().unwrap() < 1e3);
        assert!(*l.last().unwrap() * 2.0 >= 1e3);
        assert_eq!(l.len(), 40 + 16 * 10);
    }

    #[test]
    fn invalid_schedules_are_rejected() {
        let s = OptimizerSchedule {
            lambda_stop: 1e-3,
            ..Default::default()
        };
        assert!(s.validate().is_err());
        let s = OptimizerSchedule {
            lambda_init: 0.0,
            ..Default::default()
        };
        assert!(s.validate().is_err());
    }
}
