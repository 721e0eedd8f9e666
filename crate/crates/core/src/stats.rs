//! Mann-Whitney U test and per-configuration run summaries.

use crate::error::{Error, Result};
use crate::problems::normal_sf;

/// Objective value assigned to runs that end without a feasible solution.
pub const DEFAULT_PENALTY: f64 = 1e10;

/// Largest sample size for which the exact null distribution is used.
const EXACT_MAX: usize = 20;

/// Two-sided Mann-Whitney U p-value.
///
/// Uses the exact null distribution when both samples have at most 20
/// values and there are no ties, and the normal approximation with tie and
/// continuity correction otherwise.
pub fn mann_whitney_p(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let u = u_statistic(a, b);
    let (n1, n2) = (a.len(), b.len());
    let mut pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let ties: Vec<usize> = pooled
        .chunk_by(|x, y| x == y)
        .map(<[f64]>::len)
        .filter(|&t| t > 1)
        .collect();

    if n1.max(n2) <= EXACT_MAX && ties.is_empty() {
        return Ok(exact_p(u as usize, n1, n2));
    }

    let tie_term: f64 = ties.iter().map(|&t| (t as f64).powi(3) - t as f64).sum();
    Ok(normal_p(u, n1, n2, tie_term))
}

fn normal_p(u: f64, n1: usize, n2: usize, tie_term: f64) -> f64 {
    let (n1, n2) = (n1 as f64, n2 as f64);
    let n = n1 + n2;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((u - n1 * n2 / 2.0).abs() - 0.5).max(0.0) / var.sqrt();
    (2.0 * normal_sf(z)).min(1.0)
}

/// `U = #{(x, y) : x > y} + #{(x, y) : x = y} / 2` over `x` in `a`, `y` in `b`.
pub fn u_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut u = 0.0;
    for x in a {
        for y in b {
            if x > y {
                u += 1.0;
            } else if x == y {
                u += 0.5;
            }
        }
    }
    u
}

/// Number of rank arrangements giving each `U` for sample sizes
/// `(n1, n2)`, via `N(i, j, u) = N(i - 1, j, u - j) + N(i, j - 1, u)`.
fn u_counts(n1: usize, n2: usize) -> Vec<f64> {
    // row[j] holds the distribution for (i, j) at the current i
    let mut row: Vec<Vec<f64>> = (0..=n2).map(|_| vec![1.0]).collect();
    for i in 1..=n1 {
        let mut next: Vec<Vec<f64>> = Vec::with_capacity(n2 + 1);
        next.push(vec![1.0]);
        for j in 1..=n2 {
            let mut d = vec![0.0; i * j + 1];
            for (u, &c) in row[j].iter().enumerate() {
                d[u + j] += c;
            }
            for (u, &c) in next[j - 1].iter().enumerate() {
                d[u] += c;
            }
            next.push(d);
        }
        row = next;
    }
    row.pop().unwrap()
}

fn exact_p(u: usize, n1: usize, n2: usize) -> f64 {
    let counts = u_counts(n1, n2);
    let total: f64 = counts.iter().sum();
    let lower: f64 = counts[..=u].iter().sum();
    let upper: f64 = counts[u..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

/// Mean and sample standard deviation of final values over repeated runs.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSummary {
    pub mean: f64,
    /// Uses the `n - 1` denominator; zero for a single run.
    pub std: f64,
    pub count: usize,
    /// Per-run values after penalty substitution.
    pub values: Vec<f64>,
}

impl SampleSummary {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let std = if count > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Ok(Self {
            mean,
            std,
            count,
            values,
        })
    }
}

/// Replaces the value of every infeasible run by `penalty`, then summarizes.
pub fn summarize(values: &[f64], penalty: f64, feasible: &[bool]) -> Result<SampleSummary> {
    if values.len() != feasible.len() {
        return Err(Error::LengthMismatch {
            expected: values.len(),
            actual: feasible.len(),
        });
    }
    let substituted = values
        .iter()
        .zip(feasible)
        .map(|(&v, &ok)| if ok { v } else { penalty })
        .collect();
    SampleSummary::from_values(substituted)
}
