//! The algorithm family.
//!
//! All archive-based algorithms share one loop: select a parent, create an
//! offspring with [`mutate_plus`], evaluate it, offer it to the
//! [`ParetoArchive`]. They differ only in parent selection:
//!
//! | algorithm        | selection                                                     |
//! |------------------|---------------------------------------------------------------|
//! | SW-GSEMO3D       | minimum `mu` until `mu = 0` is found, then the plain window   |
//! | Fast SW-GSEMO3D  | as above with user parameters, `c_max` protection and a final |
//! |                  | maximum-`c` phase while `c_max < B - epsilon`                 |
//! | GSEMO3D, GSEMO2D | uniform over the archive                                      |
//!
//! The clock `t` counts fitness evaluations: the initial solution is
//! evaluation 1 and every offspring costs one more, so a run with budget
//! `t_max` performs exactly `t_max` evaluations.

mod ea;
mod mutation;
mod schedule;
mod trace;

use std::collections::BTreeMap;

use rand::RngCore;

pub use ea::{run_one_plus_one_ea, EaResult};
pub use mutation::{mutate_plus, sample_flips};
pub use schedule::{sliding_selection, sliding_window, SlidingParams, Window};
pub use trace::{TraceRecord, TraceWriter};

use crate::archive::{Individual, Objective3, ParetoArchive};
use crate::bits::BitSolution;
use crate::error::{Error, Result};
use crate::problems::{Evaluator, ProblemInstance, StochasticWeights};

/// How the first search point is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Init {
    Zeros,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Algorithm {
    SwGsemo3d,
    FastSwGsemo3d(SlidingParams),
    Gsemo3d,
    /// Bi-objective GSEMO on `(mu + R d, v + R d)` with `d` the
    /// constraint deficit `max(0, target - c)`.
    Gsemo2d {
        penalty: f64,
    },
}

/// Which rule picked the parent of an offspring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    MinMu,
    MaxC,
    Window(Window),
    Uniform,
}

/// Everything an [`Observer`] sees after one offspring was processed.
#[derive(Debug)]
pub struct Step<'a> {
    pub t: u64,
    pub phase: Phase,
    pub parent: Objective3,
    pub offspring: Objective3,
    pub accepted: bool,
    pub archive: &'a ParetoArchive,
    pub c_max: Option<u32>,
    pub mu_min: f64,
    pub t0: Option<u64>,
}

/// Hooks into a running algorithm. Both default to no-ops.
pub trait Observer {
    /// Called right after parent selection, before mutation.
    fn on_select(
        &mut self,
        _t: u64,
        _phase: Phase,
        _parent: &Individual,
        _archive: &ParetoArchive,
    ) {
    }

    /// Called after the offspring was offered to the archive.
    fn on_step(&mut self, _step: &Step<'_>) {}
}

/// Observer that does nothing.
pub struct NoObserver;

impl Observer for NoObserver {}

/// Outcome of an archive-based run.
#[derive(Clone, Debug)]
pub struct RunResult {
    /// Final population with true `(mu, v, c)` objectives.
    pub population: Vec<Individual>,
    /// Largest bucket size seen per constraint value.
    pub max_size_by_c: BTreeMap<u32, usize>,
    /// Largest population size at any time.
    pub max_pop_overall: usize,
    /// Largest pool a window (or uniform) selection drew from.
    pub max_pop_window: usize,
    /// Evaluation index at which `mu = 0` was first seen.
    pub t0: Option<u64>,
    pub c_max: Option<u32>,
    pub mu_min: f64,
    pub evals: u64,
}

/// SW-GSEMO3D with the plain schedule.
pub fn run_sw_gsemo3d<R: RngCore + ?Sized>(
    inst: &ProblemInstance,
    t_max: u64,
    init: Init,
    rng: &mut R,
) -> Result<RunResult> {
    run(
        inst,
        Algorithm::SwGsemo3d,
        t_max,
        init,
        rng,
        &mut NoObserver,
    )
}

/// Fast SW-GSEMO3D with the given schedule parameters.
pub fn run_fast_sw_gsemo3d<R: RngCore + ?Sized>(
    inst: &ProblemInstance,
    t_max: u64,
    params: SlidingParams,
    init: Init,
    rng: &mut R,
) -> Result<RunResult> {
    run(
        inst,
        Algorithm::FastSwGsemo3d(params),
        t_max,
        init,
        rng,
        &mut NoObserver,
    )
}

pub fn run_gsemo3d<R: RngCore + ?Sized>(
    inst: &ProblemInstance,
    t_max: u64,
    init: Init,
    rng: &mut R,
) -> Result<RunResult> {
    run(inst, Algorithm::Gsemo3d, t_max, init, rng, &mut NoObserver)
}

pub fn run_gsemo2d<R: RngCore + ?Sized>(
    inst: &ProblemInstance,
    t_max: u64,
    init: Init,
    rng: &mut R,
    penalty: f64,
) -> Result<RunResult> {
    run(
        inst,
        Algorithm::Gsemo2d { penalty },
        t_max,
        init,
        rng,
        &mut NoObserver,
    )
}

/// Penalty factor `sum(mu) + K_max * sqrt(sum(var)) + 1`.
///
/// Exceeds the surrogate weight of every solution at every level up to
/// `k_max`, so one unit of constraint deficit outweighs any difference in
/// expected weight or variance.
pub fn default_penalty(weights: &StochasticWeights, k_max: f64) -> f64 {
    weights.total_mu() + k_max * weights.total_var().sqrt() + 1.0
}

/// Runs `algorithm` for exactly `t_max` evaluations.
pub fn run<R: RngCore + ?Sized, O: Observer + ?Sized>(
    inst: &ProblemInstance,
    algorithm: Algorithm,
    t_max: u64,
    init: Init,
    rng: &mut R,
    observer: &mut O,
) -> Result<RunResult> {
    if t_max == 0 {
        return Err(Error::Config("budget must be at least 1".into()));
    }
    if inst.n() == 0 {
        return Err(Error::Config("instance has no items".into()));
    }
    match algorithm {
        Algorithm::FastSwGsemo3d(p) => p.validate()?,
        Algorithm::Gsemo2d { penalty } if !(penalty.is_finite() && penalty > 0.0) => {
            return Err(Error::Config(format!(
                "penalty must be positive and finite, got {penalty}"
            )));
        }
        _ => {}
    }
    Driver::new(inst, algorithm, t_max, rng).execute(init, observer)
}

struct Driver<'a, 'r, R: ?Sized> {
    inst: &'a ProblemInstance,
    algorithm: Algorithm,
    eval: Evaluator<'a>,
    archive: ParetoArchive,
    rng: &'r mut R,
    t_max: u64,
    bound: u32,
    mu_min: f64,
    t0: Option<u64>,
    c_max: Option<u32>,
    max_pop_overall: usize,
    max_pop_window: usize,
}

impl<'a, 'r, R: RngCore + ?Sized> Driver<'a, 'r, R> {
    fn new(inst: &'a ProblemInstance, algorithm: Algorithm, t_max: u64, rng: &'r mut R) -> Self {
        Self {
            inst,
            algorithm,
            eval: Evaluator::new(inst),
            archive: ParetoArchive::new(),
            rng,
            t_max,
            bound: inst.bound(),
            mu_min: f64::INFINITY,
            t0: None,
            c_max: None,
            max_pop_overall: 0,
            max_pop_window: 0,
        }
    }

    fn tracks_c_max(&self) -> bool {
        matches!(self.algorithm, Algorithm::FastSwGsemo3d(p) if p.c_max_tracking)
    }

    /// Archive key: the objective vector itself, or the penalized pair with
    /// `c` fixed at zero for the bi-objective variant.
    fn key(&self, obj: Objective3) -> Objective3 {
        match self.algorithm {
            Algorithm::Gsemo2d { penalty } => {
                let deficit = f64::from(self.inst.target().saturating_sub(obj.c));
                Objective3::new(obj.mu + penalty * deficit, obj.var + penalty * deficit, 0)
            }
            _ => obj,
        }
    }

    fn record(&mut self, obj: &Objective3, t: u64) {
        if obj.mu < self.mu_min {
            self.mu_min = obj.mu;
        }
        if self.t0.is_none() && self.mu_min == 0.0 {
            self.t0 = Some(t);
        }
        if self.tracks_c_max() && obj.c <= self.bound && self.c_max.is_none_or(|m| obj.c > m) {
            self.c_max = Some(obj.c);
        }
    }

    fn execute<O: Observer + ?Sized>(mut self, init: Init, observer: &mut O) -> Result<RunResult> {
        let n = self.inst.n();
        let x0 = match init {
            Init::Zeros => BitSolution::zeros(n),
            Init::Random => BitSolution::random(n, self.rng),
        };
        let obj0 = self.eval.full(&x0);
        let mut t = 1u64;
        self.record(&obj0, t);
        let key0 = self.key(obj0);
        self.archive.try_insert(Individual::new(x0, key0));
        self.max_pop_overall = 1;

        let mut flips = Vec::new();
        while t < self.t_max {
            t += 1;
            let (phase, parent) = self.select(t)?;
            observer.on_select(t, phase, &parent, &self.archive);

            sample_flips(n, self.rng, &mut flips);
            let mut child = parent.x.clone();
            for &i in &flips {
                child.flip(i);
            }
            let obj = match self.algorithm {
                // archive keys of the bi-objective variant do not carry c
                Algorithm::Gsemo2d { .. } => self.eval.full(&child),
                _ => self.eval.offspring(&parent.x, parent.obj.c, &child, &flips),
            };
            self.record(&obj, t);
            let key = self.key(obj);
            let accepted = self
                .archive
                .try_insert(Individual::new(child, key))
                .is_accepted();
            self.max_pop_overall = self.max_pop_overall.max(self.archive.len());

            observer.on_step(&Step {
                t,
                phase,
                parent: parent.obj,
                offspring: key,
                accepted,
                archive: &self.archive,
                c_max: self.c_max,
                mu_min: self.mu_min,
                t0: self.t0,
            });
        }

        let population = match self.algorithm {
            Algorithm::Gsemo2d { .. } => self
                .archive
                .iter()
                .map(|m| Individual::new(m.x.clone(), self.inst.evaluate_unchecked(&m.x)))
                .collect(),
            _ => self.archive.iter().cloned().collect(),
        };
        Ok(RunResult {
            population,
            max_size_by_c: self.archive.max_size_by_c().clone(),
            max_pop_overall: self.max_pop_overall,
            max_pop_window: self.max_pop_window,
            t0: self.t0,
            c_max: self.c_max,
            mu_min: self.mu_min,
            evals: t,
        })
    }

    fn select(&mut self, t: u64) -> Result<(Phase, Individual)> {
        match self.algorithm {
            Algorithm::SwGsemo3d => {
                if self.t0.is_none() {
                    return self.min_mu();
                }
                self.window(t, &SlidingParams::PLAIN, None)
            }
            Algorithm::FastSwGsemo3d(params) => {
                let horizon = params.t_frac * self.t_max as f64;
                if self.t0.is_none() && t as f64 <= horizon {
                    return self.min_mu();
                }
                let c_max = self.c_max.map_or(-1, i64::from);
                if t as f64 > horizon && c_max < i64::from(self.bound) - i64::from(params.epsilon) {
                    let parent = self.archive.argmax_c(self.rng)?.clone();
                    return Ok((Phase::MaxC, parent));
                }
                let keep = if params.c_max_tracking {
                    self.c_max
                } else {
                    None
                };
                self.window(t, &params, keep)
            }
            Algorithm::Gsemo3d | Algorithm::Gsemo2d { .. } => {
                let parent = self.archive.select_uniform(self.rng)?.clone();
                self.max_pop_window = self.max_pop_window.max(self.archive.len());
                Ok((Phase::Uniform, parent))
            }
        }
    }

    fn min_mu(&mut self) -> Result<(Phase, Individual)> {
        let parent = self.archive.argmin_mu(self.rng)?.clone();
        Ok((Phase::MinMu, parent))
    }

    /// Sliding selection on the clock shifted by `t0` (`-1` if unset).
    fn window(
        &mut self,
        t: u64,
        params: &SlidingParams,
        keep: Option<u32>,
    ) -> Result<(Phase, Individual)> {
        let t0 = self.t0.map_or(-1, |v| v as i64);
        let shifted_t = (t as i64 - t0) as u64;
        let shifted_max = (self.t_max as i64 - t0) as u64;
        let (window, selected) = sliding_selection(
            &mut self.archive,
            shifted_t,
            shifted_max,
            self.bound,
            params,
            keep,
            self.rng,
        )?;
        let parent = selected.member.clone();
        self.max_pop_window = self.max_pop_window.max(selected.pool);
        Ok((Phase::Window(window), parent))
    }
}
