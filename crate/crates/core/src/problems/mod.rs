//! Problem models: stochastic item weights, constraint functions and the
//! chance-constraint surrogate.
//!
//! Two models are built in. In the dominating-set model the constraint value
//! is the number of dominated nodes and a selection is feasible when every
//! node is dominated (`c(x) = n = B`). In the uniform-constraint model the
//! constraint value is the number of selected items, `c(x) = |x|_1`, and a
//! target cardinality `k` is feasible when `c(x) >= k`.
//!
//! For normally distributed weights, `Pr(w(x) <= W) >= alpha` is equivalent
//! to `mu(x) + K_alpha * sqrt(v(x)) <= W`, which is what [`surrogate_weight`]
//! computes.

mod io;
mod quantile;

use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::Rng as _;
use rand::RngCore;

pub use io::{read_weights_csv, write_weights_csv, InstanceHeader};
pub use quantile::{normal_cdf, normal_quantile, normal_sf};

use crate::archive::Objective3;
use crate::bits::BitSolution;
use crate::error::{Error, Result};
use crate::graph::{Graph, VisitMarks};

/// Tail probabilities used for result tables, from `0.2` down to `1e-14`.
pub const DEFAULT_BETAS: [f64; 9] = [0.2, 0.1, 0.01, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14];

/// Per-item expected weights and variances.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticWeights {
    mu: Vec<f64>,
    var: Vec<f64>,
}

impl StochasticWeights {
    pub fn new(mu: Vec<f64>, var: Vec<f64>) -> Result<Self> {
        if mu.len() != var.len() {
            return Err(Error::LengthMismatch {
                expected: mu.len(),
                actual: var.len(),
            });
        }
        if let Some(bad) = mu
            .iter()
            .chain(&var)
            .find(|w| !(w.is_finite() && **w >= 0.0))
        {
            return Err(Error::Domain(format!(
                "weights must be finite and non-negative, got {bad}"
            )));
        }
        Ok(Self { mu, var })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn var(&self) -> &[f64] {
        &self.var
    }

    /// `(mu(x), v(x))`, summed over selected items in ascending index order.
    ///
    /// The fixed order makes the result a function of the selected set, so
    /// equal sets always produce bit-identical sums.
    pub fn sums(&self, x: &BitSolution) -> (f64, f64) {
        debug_assert_eq!(x.len(), self.n());
        x.iter_ones()
            .fold((0.0, 0.0), |(m, v), i| (m + self.mu[i], v + self.var[i]))
    }

    pub fn total_mu(&self) -> f64 {
        self.mu.iter().sum()
    }

    pub fn total_var(&self) -> f64 {
        self.var.iter().sum()
    }
}

/// Confidence level `alpha = 1 - beta` with its cached normal quantile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfidenceLevel {
    beta: f64,
    k_alpha: f64,
}

impl ConfidenceLevel {
    /// Requires `0 < beta <= 1/2`.
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 0.5) {
            return Err(Error::Domain(format!(
                "beta must lie in (0, 1/2], got {beta}"
            )));
        }
        // K_alpha = -Phi^-1(beta); beta is exact where 1 - beta may not be
        let k_alpha = 0.0 - normal_quantile(beta)?;
        Ok(Self { beta, k_alpha })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha(&self) -> f64 {
        1.0 - self.beta
    }

    pub fn k_alpha(&self) -> f64 {
        self.k_alpha
    }
}

#[derive(Clone, Debug)]
pub enum ProblemKind {
    DominatingSet(Arc<Graph>),
    UniformConstraint,
}

/// A problem instance: model, weights, constraint bound `B` and the
/// constraint value a solution needs to count as feasible.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    kind: ProblemKind,
    weights: StochasticWeights,
    bound: u32,
    target: u32,
}

impl ProblemInstance {
    /// Dominating set on `graph`; `B = n` and feasibility means `c(x) = n`.
    pub fn dominating_set(graph: Arc<Graph>, weights: StochasticWeights) -> Result<Self> {
        if weights.n() != graph.n() {
            return Err(Error::LengthMismatch {
                expected: graph.n(),
                actual: weights.n(),
            });
        }
        let bound = graph.n() as u32;
        Ok(Self {
            kind: ProblemKind::DominatingSet(graph),
            weights,
            bound,
            target: bound,
        })
    }

    /// Uniform constraint `c(x) = |x|_1` with `B = n`. The target
    /// cardinality defaults to `n`; see [`with_target`](Self::with_target).
    pub fn uniform_constraint(weights: StochasticWeights) -> Self {
        let bound = weights.n() as u32;
        Self {
            kind: ProblemKind::UniformConstraint,
            weights,
            bound,
            target: bound,
        }
    }

    /// Sets the constraint value required for feasibility (`k` in `|x|_1 >= k`).
    pub fn with_target(mut self, target: u32) -> Result<Self> {
        if target > self.bound {
            return Err(Error::Domain(format!(
                "target {target} exceeds bound {}",
                self.bound
            )));
        }
        self.target = target;
        Ok(self)
    }

    pub fn kind(&self) -> &ProblemKind {
        &self.kind
    }

    pub fn weights(&self) -> &StochasticWeights {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.n()
    }

    /// The constraint bound `B`; `c(x) <= B` for every `x`.
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    pub fn graph(&self) -> Option<&Graph> {
        match &self.kind {
            ProblemKind::DominatingSet(g) => Some(g),
            ProblemKind::UniformConstraint => None,
        }
    }

    /// The objective triple `(mu(x), v(x), c(x))`.
    pub fn evaluate(&self, x: &BitSolution) -> Result<Objective3> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: x.len(),
            });
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &BitSolution) -> Objective3 {
        let (mu, var) = self.weights.sums(x);
        Objective3 {
            mu,
            var,
            c: self.constraint_unchecked(x),
        }
    }

    fn constraint_unchecked(&self, x: &BitSolution) -> u32 {
        match &self.kind {
            ProblemKind::DominatingSet(g) => {
                (0..g.n()).filter(|&v| g.is_dominated(v, x)).count() as u32
            }
            ProblemKind::UniformConstraint => x.count_ones() as u32,
        }
    }

    /// Whether a constraint value meets the feasibility target.
    pub fn is_feasible(&self, c: u32) -> bool {
        c >= self.target
    }
}

/// `mu(x) + K_alpha * sqrt(v(x))`.
pub fn surrogate_weight(
    weights: &StochasticWeights,
    x: &BitSolution,
    level: &ConfidenceLevel,
) -> Result<f64> {
    if x.len() != weights.n() {
        return Err(Error::LengthMismatch {
            expected: weights.n(),
            actual: x.len(),
        });
    }
    let (mu, var) = weights.sums(x);
    Ok(surrogate(mu, var, level.k_alpha()))
}

#[inline]
pub fn surrogate(mu: f64, var: f64, k_alpha: f64) -> f64 {
    mu + k_alpha * var.sqrt()
}

/// Incremental evaluator owned by a single run.
///
/// Offspring are evaluated relative to their parent: `mu` and `v` are
/// re-summed in canonical order, the domination count is updated from the
/// neighborhoods of the flipped nodes.
#[derive(Debug)]
pub struct Evaluator<'a> {
    inst: &'a ProblemInstance,
    marks: VisitMarks,
}

impl<'a> Evaluator<'a> {
    pub fn new(inst: &'a ProblemInstance) -> Self {
        Self {
            inst,
            marks: VisitMarks::default(),
        }
    }

    pub fn instance(&self) -> &'a ProblemInstance {
        self.inst
    }

    pub fn full(&mut self, x: &BitSolution) -> Objective3 {
        self.inst.evaluate_unchecked(x)
    }

    pub fn offspring(
        &mut self,
        parent: &BitSolution,
        parent_c: u32,
        child: &BitSolution,
        flips: &[usize],
    ) -> Objective3 {
        let (mu, var) = self.inst.weights.sums(child);
        let c = match &self.inst.kind {
            ProblemKind::DominatingSet(g) => {
                (parent_c as i64 + g.domination_delta(parent, child, flips, &mut self.marks)) as u32
            }
            ProblemKind::UniformConstraint => child.count_ones() as u32,
        };
        Objective3 { mu, var, c }
    }
}

/// Integer weights drawn uniformly from the given ranges.
///
/// Draw order is `mu[0], var[0], mu[1], var[1], ...`; bounded integers come
/// from `rand`'s unbiased rejection sampler.
pub fn gen_integer_weights<R: RngCore + ?Sized>(
    n: usize,
    mu: RangeInclusive<u64>,
    var: RangeInclusive<u64>,
    rng: &mut R,
) -> StochasticWeights {
    let mut mus = Vec::with_capacity(n);
    let mut vars = Vec::with_capacity(n);
    for _ in 0..n {
        mus.push(rng.random_range(mu.clone()) as f64);
        vars.push(rng.random_range(var.clone()) as f64);
    }
    StochasticWeights { mu: mus, var: vars }
}

/// Uniform setting: `mu_i` in `{n, ..., 2n}`, `var_i` in `{n^2, ..., 2n^2}`.
pub fn gen_uniform_weights<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> StochasticWeights {
    let n64 = n as u64;
    gen_integer_weights(n, n64..=2 * n64, n64 * n64..=2 * n64 * n64, rng)
}

/// Degree-based setting: `mu(u) = (n + deg(u))^5 / n^4`, variances as in the
/// uniform setting. Only the variances consume randomness.
pub fn gen_degree_weights<R: RngCore + ?Sized>(g: &Graph, rng: &mut R) -> StochasticWeights {
    let n = g.n();
    let nf = n as f64;
    let n64 = n as u64;
    let denom = nf.powi(4);
    let mu = (0..n)
        .map(|v| (nf + g.degree(v) as f64).powi(5) / denom)
        .collect();
    let var = (0..n)
        .map(|_| rng.random_range(n64 * n64..=2 * n64 * n64) as f64)
        .collect();
    StochasticWeights { mu, var }
}
