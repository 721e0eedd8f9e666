//! Ground truth for small and structured instances.
//!
//! [`brute_force_front`] enumerates every subset of a tiny instance.
//! [`greedy_front`] covers the uniform-constraint model at moderate `n`:
//! for a weighting `f_l(e) = l * mu_e + (1 - l) * var_e` the best `k`-subset
//! is the `k` items with smallest `f_l`, and the item order only changes at
//! finitely many values of `l`. Evaluating one `l` between each pair of
//! consecutive breakpoints therefore yields every supported trade-off.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::Write;

use num_rational::Ratio;

use crate::bits::BitSolution;
use crate::error::{Error, Result};
use crate::problems::{ProblemInstance, StochasticWeights};

/// Largest `n` accepted by [`brute_force_front`].
pub const BRUTE_FORCE_MAX_N: usize = 24;

/// Breakpoint gaps below this switch to exact arithmetic.
const MIN_GAP: f64 = 1e-12;

/// A non-dominated `(mu, var)` pair and one subset attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontPoint {
    pub mu: f64,
    pub var: f64,
    pub witness: BitSolution,
}

/// For every achievable constraint value, the exact 2D Pareto set of
/// `(mu, var)` over all subsets with that value, sorted by `mu`.
///
/// Among subsets with equal `(mu, var)` the witness is the one with the
/// smallest bit mask.
pub fn brute_force_front(inst: &ProblemInstance) -> Result<BTreeMap<u32, Vec<FrontPoint>>> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let mut by_c: BTreeMap<u32, Vec<(f64, f64, u64)>> = BTreeMap::new();
    for mask in 0..(1u64 << n) {
        let x = BitSolution::from_mask(mask, n);
        let o = inst.evaluate(&x)?;
        let bucket = by_c.entry(o.c).or_default();
        bucket.push((o.mu, o.var, mask));
        if bucket.len() >= 4096 {
            reduce_2d(bucket);
        }
    }
    Ok(by_c
        .into_iter()
        .map(|(c, mut pts)| {
            reduce_2d(&mut pts);
            let front = pts
                .into_iter()
                .map(|(mu, var, mask)| FrontPoint {
                    mu,
                    var,
                    witness: BitSolution::from_mask(mask, n),
                })
                .collect();
            (c, front)
        })
        .collect())
}

/// Keeps the non-dominated points (both coordinates minimized), one per
/// distinct pair, sorted by `mu` ascending.
fn reduce_2d<T: Copy + Ord>(pts: &mut Vec<(f64, f64, T)>) {
    pts.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    let mut best_var = f64::INFINITY;
    pts.retain(|p| {
        if p.1 < best_var {
            best_var = p.1;
            true
        } else {
            false
        }
    });
}

/// Sorted breakpoints `0 = l_0 < l_1 < ... < l_m < l_{m+1} = 1` and the
/// midpoints between consecutive ones.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaBreakpoints {
    pub lambdas: Vec<f64>,
    pub midpoints: Vec<f64>,
    exact_midpoints: Option<Vec<Ratio<i128>>>,
}

impl LambdaBreakpoints {
    /// Whether orderings are computed in exact rational arithmetic because
    /// two breakpoints were too close for floating point.
    pub fn is_exact(&self) -> bool {
        self.exact_midpoints.is_some()
    }
}

/// Breakpoints of the item order under `f_l`.
///
/// A pair `(i, j)` with `var_i < var_j` and `mu_i > mu_j` swaps order at
/// `l = (var_j - var_i) / ((mu_i - mu_j) + (var_j - var_i))`; no other pair
/// ever swaps. If two breakpoints lie closer than `1e-12` and all weights are
/// integers, the midpoints are recomputed as exact rationals.
pub fn compute_breakpoints(weights: &StochasticWeights) -> LambdaBreakpoints {
    let pairs = crossing_pairs(weights);
    let mut inner: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| {
            let (mu, var) = (weights.mu(), weights.var());
            let dv = var[j] - var[i];
            dv / ((mu[i] - mu[j]) + dv)
        })
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();

    let mut lambdas = Vec::with_capacity(inner.len() + 2);
    lambdas.push(0.0);
    lambdas.extend(inner.iter().copied().filter(|&l| l > 0.0 && l < 1.0));
    lambdas.push(1.0);
    let midpoints: Vec<f64> = lambdas.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();

    let min_gap = lambdas
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let exact_midpoints = if min_gap < MIN_GAP {
        let exact = exact_midpoints(weights, &pairs);
        match &exact {
            Some(_) => {
                log::warn!("breakpoint gap {min_gap:e} below {MIN_GAP:e}, using exact arithmetic")
            }
            None => {
                log::warn!("breakpoint gap {min_gap:e} below {MIN_GAP:e} with non-integer weights")
            }
        }
        exact
    } else {
        None
    };
    LambdaBreakpoints {
        lambdas,
        midpoints,
        exact_midpoints,
    }
}

fn crossing_pairs(weights: &StochasticWeights) -> Vec<(usize, usize)> {
    let (mu, var) = (weights.mu(), weights.var());
    let n = weights.n();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            // orient so that i has the smaller variance
            let (i, j) = if var[a] <= var[b] { (a, b) } else { (b, a) };
            if var[i] < var[j] && mu[i] > mu[j] {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn as_integer(x: f64) -> Option<i128> {
    (x.fract() == 0.0 && x.abs() < 2f64.powi(52)).then_some(x as i128)
}

fn exact_midpoints(
    weights: &StochasticWeights,
    pairs: &[(usize, usize)],
) -> Option<Vec<Ratio<i128>>> {
    let mu: Vec<i128> = weights
        .mu()
        .iter()
        .map(|&m| as_integer(m))
        .collect::<Option<_>>()?;
    let var: Vec<i128> = weights
        .var()
        .iter()
        .map(|&v| as_integer(v))
        .collect::<Option<_>>()?;
    let mut lambdas: Vec<Ratio<i128>> = pairs
        .iter()
        .map(|&(i, j)| {
            let dv = var[j] - var[i];
            Ratio::new(dv, (mu[i] - mu[j]) + dv)
        })
        .collect();
    lambdas.push(Ratio::from_integer(0));
    lambdas.push(Ratio::from_integer(1));
    lambdas.sort();
    lambdas.dedup();
    let half = Ratio::new(1, 2);
    Some(lambdas.windows(2).map(|w| (w[0] + w[1]) * half).collect())
}

/// How ties in `f_l` are broken when ordering items.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieRule {
    #[default]
    LowerIndexFirst,
    HigherIndexFirst,
}

/// Per `k`, the non-dominated `(mu, var)` pairs reached by greedy prefixes
/// over all breakpoint midpoints, sorted by `mu`.
pub fn greedy_front(weights: &StochasticWeights) -> BTreeMap<u32, Vec<(f64, f64)>> {
    greedy_front_with(weights, TieRule::default())
}

pub fn greedy_front_with(
    weights: &StochasticWeights,
    ties: TieRule,
) -> BTreeMap<u32, Vec<(f64, f64)>> {
    let bp = compute_breakpoints(weights);
    let n = weights.n();
    let (mu, var) = (weights.mu(), weights.var());
    let mut per_k: Vec<Vec<(f64, f64, ())>> = vec![Vec::new(); n + 1];
    let mut order: Vec<usize> = (0..n).collect();

    let tie = |a: usize, b: usize| match ties {
        TieRule::LowerIndexFirst => a.cmp(&b),
        TieRule::HigherIndexFirst => b.cmp(&a),
    };
    let mut emit = |order: &[usize]| {
        let (mut m, mut v) = (0.0, 0.0);
        per_k[0].push((0.0, 0.0, ()));
        for (k, &e) in order.iter().enumerate() {
            m += mu[e];
            v += var[e];
            per_k[k + 1].push((m, v, ()));
        }
    };

    match &bp.exact_midpoints {
        Some(exact) => {
            let mu_r: Vec<Ratio<i128>> =
                mu.iter().map(|&x| Ratio::from_integer(x as i128)).collect();
            let var_r: Vec<Ratio<i128>> = var
                .iter()
                .map(|&x| Ratio::from_integer(x as i128))
                .collect();
            let one = Ratio::from_integer(1);
            for l in exact {
                let f = |e: usize| *l * mu_r[e] + (one - *l) * var_r[e];
                order.sort_by(|&a, &b| f(a).cmp(&f(b)).then_with(|| tie(a, b)));
                emit(&order);
            }
        }
        None => {
            for &l in &bp.midpoints {
                let f = |e: usize| l * mu[e] + (1.0 - l) * var[e];
                order.sort_by(|&a, &b| {
                    f(a).partial_cmp(&f(b))
                        .unwrap_or(Ordering::Equal)
                        .then_with(|| tie(a, b))
                });
                emit(&order);
            }
        }
    }

    per_k
        .into_iter()
        .enumerate()
        .map(|(k, mut pts)| {
            reduce_2d(&mut pts);
            (k as u32, pts.into_iter().map(|(m, v, ())| (m, v)).collect())
        })
        .collect()
}

/// Writes a front as `k,mu,var` rows, ascending in `k` then `mu`.
pub fn write_front_csv<W: Write>(front: &BTreeMap<u32, Vec<(f64, f64)>>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "mu", "var"])?;
    for (k, pts) in front {
        for (mu, var) in pts {
            w.write_record([k.to_string(), mu.to_string(), var.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Drops the witnesses of a brute-force front.
pub fn front_values(front: &BTreeMap<u32, Vec<FrontPoint>>) -> BTreeMap<u32, Vec<(f64, f64)>> {
    front
        .iter()
        .map(|(&c, pts)| (c, pts.iter().map(|p| (p.mu, p.var)).collect()))
        .collect()
}
