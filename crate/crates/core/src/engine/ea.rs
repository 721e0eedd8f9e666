use rand::RngCore;

use super::mutation::sample_flips;
use crate::archive::Objective3;
use crate::bits::BitSolution;
use crate::error::{Error, Result};
use crate::problems::{surrogate, ConfidenceLevel, Evaluator, ProblemInstance};

/// Final state of a (1+1) EA run.
#[derive(Clone, Debug)]
pub struct EaResult {
    pub x: BitSolution,
    pub obj: Objective3,
    /// Penalized fitness `w_hat + R * deficit`.
    pub fitness: f64,
    /// Surrogate weight `w_hat` without the penalty.
    pub surrogate: f64,
    pub feasible: bool,
    pub evals: u64,
}

/// Single-individual hill climber on `w_hat(x) + R * max(0, target - c(x))`
/// for one confidence level. Starts uniformly at random and accepts
/// offspring that are no worse.
pub fn run_one_plus_one_ea<R: RngCore + ?Sized>(
    inst: &ProblemInstance,
    level: &ConfidenceLevel,
    t_max: u64,
    rng: &mut R,
    penalty: f64,
) -> Result<EaResult> {
    if t_max == 0 {
        return Err(Error::Config("budget must be at least 1".into()));
    }
    if inst.n() == 0 {
        return Err(Error::Config("instance has no items".into()));
    }
    if !(penalty.is_finite() && penalty > 0.0) {
        return Err(Error::Config(format!(
            "penalty must be positive and finite, got {penalty}"
        )));
    }
    let k = level.k_alpha();
    let target = inst.target();
    let fitness = |o: &Objective3| {
        surrogate(o.mu, o.var, k) + penalty * f64::from(target.saturating_sub(o.c))
    };

    let mut eval = Evaluator::new(inst);
    let mut x = BitSolution::random(inst.n(), rng);
    let mut obj = eval.full(&x);
    let mut fx = fitness(&obj);
    let mut flips = Vec::new();
    let mut t = 1;
    while t < t_max {
        t += 1;
        sample_flips(inst.n(), rng, &mut flips);
        let mut y = x.clone();
        for &i in &flips {
            y.flip(i);
        }
        let oy = eval.offspring(&x, obj.c, &y, &flips);
        let fy = fitness(&oy);
        if fy <= fx {
            x = y;
            obj = oy;
            fx = fy;
        }
    }
    Ok(EaResult {
        surrogate: surrogate(obj.mu, obj.var, k),
        feasible: inst.is_feasible(obj.c),
        x,
        obj,
        fitness: fx,
        evals: t,
    })
}
