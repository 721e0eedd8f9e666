//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::erf::erfc;
use swgsemo::bench::{
    extract_final, run_experiment, AlgoSpec, ExperimentConfig, GraphSpec, ProblemSpec, WeightMode,
};
use swgsemo::engine::{
    mutate_plus, run, run_gsemo3d, run_sw_gsemo3d, sliding_window, Algorithm, Init, Observer,
    Phase, SlidingParams, Step,
};
use swgsemo::oracles::{brute_force_front, front_values, greedy_front};
use swgsemo::problems::{
    gen_integer_weights, gen_uniform_weights, normal_quantile, surrogate, DEFAULT_BETAS,
};
use swgsemo::stats::{mann_whitney_p, summarize, DEFAULT_PENALTY};
use swgsemo::{
    seeded_rng, BitSolution, ConfidenceLevel, Objective3, ParetoArchive, ProblemInstance,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(limit: Duration, elapsed: Duration) -> bool {
    elapsed <= limit
}

// 1 ------------------------------------------------------------------------

fn oracle_optimality() -> Outcome {
    let start = Instant::now();
    let n = 12usize;
    let t_max = (200.0 * (n * n) as f64 * (n as f64).ln()).floor() as u64;
    let betas = [0.2, 0.01, 1e-6];
    let mut ok_runs = 0;
    for seed in 0..30u64 {
        let w = gen_integer_weights(n, 1..=10, 1..=10, &mut seeded_rng(seed, 0));
        let inst = ProblemInstance::uniform_constraint(w);
        let front = front_values(&brute_force_front(&inst).unwrap());
        let res = run_sw_gsemo3d(&inst, t_max, Init::Zeros, &mut seeded_rng(seed, 1)).unwrap();
        let all = betas.iter().all(|&beta| {
            let k = ConfidenceLevel::new(beta).unwrap().k_alpha();
            front.iter().all(|(&c, pts)| {
                let opt = min_w(pts.iter().copied(), k);
                let got = min_w(
                    res.population
                        .iter()
                        .filter(|m| m.obj.c == c)
                        .map(|m| (m.obj.mu, m.obj.var)),
                    k,
                );
                (got - opt).abs() <= 1e-9
            })
        });
        ok_runs += all as usize;
    }
    let elapsed = start.elapsed();
    outcome(
        ok_runs >= 28 && within(Duration::from_secs(30), elapsed),
        format!("{ok_runs}/30 runs optimal for all k and beta, t_max {t_max}, {elapsed:.1?}"),
    )
}

fn min_w(pts: impl Iterator<Item = (f64, f64)>, k: f64) -> f64 {
    pts.map(|(m, v)| surrogate(m, v, k))
        .fold(f64::INFINITY, f64::min)
}

// 2 ------------------------------------------------------------------------

fn greedy_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded_rng(2024, 0);
    let mut mismatches = 0;
    let mut checks = 0;
    for i in 0..100usize {
        let n = 1 + i % 14;
        let w = gen_integer_weights(n, 1..=10, 1..=10, &mut rng);
        let inst = ProblemInstance::uniform_constraint(w.clone());
        let brute = front_values(&brute_force_front(&inst).unwrap());
        let greedy = greedy_front(&w);
        for beta in DEFAULT_BETAS {
            let k = ConfidenceLevel::new(beta).unwrap().k_alpha();
            for (c, pts) in &brute {
                checks += 1;
                let Some(gpts) = greedy.get(c) else {
                    mismatches += 1;
                    continue;
                };
                let (bw, gw) = (
                    min_w(pts.iter().copied(), k),
                    min_w(gpts.iter().copied(), k),
                );
                let argmin = |p: &[(f64, f64)], best: f64| -> BTreeSet<(u64, u64)> {
                    p.iter()
                        .filter(|&&(m, v)| surrogate(m, v, k) <= best + 1e-9)
                        .map(|&(m, v)| (m.to_bits(), v.to_bits()))
                        .collect()
                };
                if (bw - gw).abs() > 1e-9 || argmin(pts, bw) != argmin(gpts, gw) {
                    mismatches += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && within(Duration::from_secs(60), elapsed),
        format!("{mismatches} mismatches in {checks} (instance, beta, k) checks, {elapsed:.1?}"),
    )
}

// 3 ------------------------------------------------------------------------

struct InvariantWatch {
    violations: usize,
    full_checks: usize,
    first: Option<String>,
}

impl InvariantWatch {
    fn record(&mut self, msg: String) {
        self.violations += 1;
        self.first.get_or_insert(msg);
    }
}

/// `O(|P|)` check: every bucket is a strict 2D front.
fn bucket_order_ok(a: &ParetoArchive) -> Result<(), String> {
    for c in a.c_values() {
        for pair in a.bucket(c).windows(2) {
            let (x, y) = (&pair[0].obj, &pair[1].obj);
            if !(x.mu < y.mu && x.var > y.var) || x.c != c {
                return Err(format!("bucket {c} out of order: {x:?}, {y:?}"));
            }
        }
    }
    Ok(())
}

impl Observer for InvariantWatch {
    fn on_step(&mut self, s: &Step<'_>) {
        if let Err(e) = bucket_order_ok(s.archive) {
            self.record(format!("t={}: {e}", s.t));
        }
        if s.accepted {
            let y = s.offspring;
            let n_equal = s.archive.iter().filter(|m| m.obj == y).count();
            let dominated = s
                .archive
                .iter()
                .any(|m| m.obj != y && swgsemo::archive::dominates_weak_3d(&m.obj, &y));
            if n_equal != 1 || dominated {
                self.record(format!(
                    "t={}: accepted offspring not a unique front member",
                    s.t
                ));
            }
        }
        if s.t.is_multiple_of(1000) {
            self.full_checks += 1;
            if let Err(e) = s.archive.validate() {
                self.record(format!("t={}: {e}", s.t));
            }
        }
    }
}

fn archive_invariants() -> Outcome {
    let g = GraphSpec::ErdosRenyi {
        n: 50,
        p: 0.1,
        seed: 3,
    }
    .load()
    .unwrap();
    let w = gen_uniform_weights(g.n(), &mut seeded_rng(3, 0));
    let inst = ProblemInstance::dominating_set(std::sync::Arc::new(g), w).unwrap();
    let mut watch = InvariantWatch {
        violations: 0,
        full_checks: 0,
        first: None,
    };
    let t_max = 100_001;
    run(
        &inst,
        Algorithm::FastSwGsemo3d(SlidingParams::FAST),
        t_max,
        Init::Random,
        &mut seeded_rng(3, 1),
        &mut watch,
    )
    .unwrap();
    let detail = match &watch.first {
        Some(e) => format!("{} violations, first: {e}", watch.violations),
        None => format!(
            "0 violations over {} iterations, {} full checks",
            t_max - 1,
            watch.full_checks
        ),
    };
    outcome(watch.violations == 0, detail)
}

// 4 ------------------------------------------------------------------------

#[derive(Default)]
struct TraceRec(Vec<(u64, Objective3, Objective3, bool, Phase)>);

impl Observer for TraceRec {
    fn on_step(&mut self, s: &Step<'_>) {
        self.0
            .push((s.t, s.parent, s.offspring, s.accepted, s.phase));
    }
}

fn schedule_formula() -> Outcome {
    let (b, t_max) = (100u32, 10_000u64);
    let mut bad = 0;
    let mut points = 0;
    let mut else_branch = 0;
    for ti in 0..10u64 {
        for ai in 0..10 {
            for fi in 0..10 {
                let t = 1 + ti * 1111;
                let a = 0.1 + 0.1 * ai as f64;
                let t_frac = 0.1 * (fi + 1) as f64;
                let std = (ai % 3) as u32 * 5;
                let p = SlidingParams {
                    t_frac,
                    std,
                    a,
                    epsilon: 0,
                    c_max_tracking: false,
                };
                let horizon = t_frac * t_max as f64;
                let (lo, hi) = if (t as f64) <= horizon {
                    let c_hat = ((t as f64).powf(a) / horizon.powf(a)) * b as f64;
                    (
                        c_hat.floor() as i64 - std as i64,
                        c_hat.ceil() as i64 + std as i64,
                    )
                } else {
                    else_branch += 1;
                    (b as i64 - std as i64, b as i64)
                };
                let want = (lo.clamp(0, b as i64) as u32, hi.clamp(0, b as i64) as u32);
                let got = sliding_window(t, t_max, b, &p);
                points += 1;
                bad += ((got.lo, got.hi) != want) as usize;
            }
        }
    }

    let inst = ProblemInstance::uniform_constraint(gen_uniform_weights(25, &mut seeded_rng(4, 0)));
    let collapsed = SlidingParams {
        c_max_tracking: false,
        ..SlidingParams::PLAIN
    };
    let mut trace_diffs = 0;
    for seed in 0..10 {
        let mut a = TraceRec::default();
        let mut f = TraceRec::default();
        run(
            &inst,
            Algorithm::SwGsemo3d,
            10_000,
            Init::Random,
            &mut seeded_rng(seed, 1),
            &mut a,
        )
        .unwrap();
        run(
            &inst,
            Algorithm::FastSwGsemo3d(collapsed),
            10_000,
            Init::Random,
            &mut seeded_rng(seed, 1),
            &mut f,
        )
        .unwrap();
        trace_diffs += (a.0 != f.0) as usize;
    }
    outcome(
        bad == 0 && trace_diffs == 0 && else_branch > 0,
        format!(
            "{bad}/{points} window mismatches ({else_branch} past the sweep), {trace_diffs}/10 trace differences"
        ),
    )
}

// 5 ------------------------------------------------------------------------

fn lower_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Bisection on the lower tail `min(p, 1 - p)`, mirrored for `p > 1/2`.
fn bisect_quantile(p: f64) -> f64 {
    let tail = p.min(1.0 - p);
    let (mut lo, mut hi) = (-40.0f64, 0.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lower_cdf(mid) < tail {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    if p > 0.5 {
        -x
    } else {
        x
    }
}

fn quantile_accuracy() -> Outcome {
    let mut ps: Vec<f64> = Vec::new();
    for i in 0..400 {
        let p = 10f64.powf(-14.0 + 13.0 * i as f64 / 399.0);
        ps.push(p);
        ps.push(1.0 - p);
    }
    for i in 0..(1000 - 800 - 2 * DEFAULT_BETAS.len()) {
        ps.push(0.1 + 0.8 * i as f64 / 181.0);
    }
    for b in DEFAULT_BETAS {
        ps.push(b);
        ps.push(1.0 - b);
    }
    let mut worst = 0.0f64;
    let mut worst_p = 0.0;
    for &p in &ps {
        let err = (normal_quantile(p).unwrap() - bisect_quantile(p)).abs();
        if err > worst {
            worst = err;
            worst_p = p;
        }
    }
    outcome(
        worst <= 1e-9 && ps.len() == 1000,
        format!(
            "{} points, max error {worst:.2e} at p = {worst_p:e}",
            ps.len()
        ),
    )
}

// 6 ------------------------------------------------------------------------

fn mutation_distribution() -> Outcome {
    let n = 100usize;
    let samples = 100_000usize;
    let x = BitSolution::random(n, &mut seeded_rng(6, 0));
    let mut rng = seeded_rng(6, 1);
    let mut counts = vec![0usize; n + 1];
    for _ in 0..samples {
        let y = mutate_plus(&x, &mut rng);
        counts[y.hamming(&x)] += 1;
    }
    let parent_returned = counts[0];

    // Binomial(n, 1/n) conditioned on at least one flip
    let q = 1.0 / n as f64;
    let mut pmf = vec![0.0f64; n + 1];
    pmf[0] = (1.0 - q).powi(n as i32);
    for k in 1..=n {
        pmf[k] = pmf[k - 1] * (n - k + 1) as f64 / k as f64 * q / (1.0 - q);
    }
    let z = 1.0 - pmf[0];
    let expected: Vec<f64> = pmf.iter().map(|p| p / z * samples as f64).collect();

    // bins 1, 2, ... while the expectation stays >= 5, then one tail bin
    let mut obs_bins = Vec::new();
    let mut exp_bins = Vec::new();
    let mut k = 1;
    while k <= n && expected[k..].iter().sum::<f64>() - expected[k] >= 5.0 {
        obs_bins.push(counts[k] as f64);
        exp_bins.push(expected[k]);
        k += 1;
    }
    obs_bins.push(counts[k..].iter().sum::<usize>() as f64);
    exp_bins.push(expected[k..].iter().sum());
    let chi2: f64 = obs_bins
        .iter()
        .zip(&exp_bins)
        .map(|(o, e)| (o - e).powi(2) / e)
        .sum();
    let df = (obs_bins.len() - 1) as f64;
    let p = 1.0 - ChiSquared::new(df).unwrap().cdf(chi2);
    outcome(
        p > 0.001 && parent_returned == 0,
        format!("chi2 {chi2:.2} on {df} df, p = {p:.3}, parent returned {parent_returned} times"),
    )
}

// 7 and 8 ----------------------------------------------------------------

fn desk_scale_config() -> ExperimentConfig {
    let algos = ["gsemo3d", "fast_sw_gsemo3d_0", "fast_sw_gsemo3d"]
        .iter()
        .map(|s| s.parse::<AlgoSpec>().unwrap())
        .collect();
    let mut cfg = ExperimentConfig::new(
        algos,
        ProblemSpec::DominatingSet {
            graph: GraphSpec::ErdosRenyi {
                n: 500,
                p: 0.01,
                seed: 7,
            },
            weights: WeightMode::Degree,
        },
    );
    cfg.t_max = 200_000;
    cfg.runs = 10;
    cfg.base_seed = 100;
    cfg.betas = vec![0.01];
    cfg.init = Init::Random;
    cfg
}

fn desk_scale(report: &swgsemo::bench::ExperimentReport, elapsed: Duration) -> Outcome {
    let fast0 = report.summary_for(0.01, "fast_sw_gsemo3d_0").unwrap();
    let gsemo = report.summary_for(0.01, "gsemo3d").unwrap();
    outcome(
        fast0.feasible == 10 && gsemo.mean >= fast0.mean && within(Duration::from_secs(300), elapsed),
        format!(
            "fast_sw_gsemo3d_0 feasible {}/10 mean {:.2}; gsemo3d feasible {}/10 mean {:.4e}; {elapsed:.1?}",
            fast0.feasible, fast0.mean, gsemo.feasible, gsemo.mean
        ),
    )
}

fn population_trend(report: &swgsemo::bench::ExperimentReport) -> Outcome {
    let random = report.population_for("fast_sw_gsemo3d").unwrap();
    let zeros = report.population_for("fast_sw_gsemo3d_0").unwrap();
    outcome(
        random.mean_max_pop_overall > zeros.mean_max_pop_overall,
        format!(
            "mean max population: random init {:.1}, zeros init {:.1}",
            random.mean_max_pop_overall, zeros.mean_max_pop_overall
        ),
    )
}

// 9 ------------------------------------------------------------------------

/// Two-sided p by enumerating every assignment of ranks to the first sample.
fn enumerate_p(a: &[f64], b: &[f64]) -> f64 {
    let mut pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let u_obs: usize = a.iter().map(|x| b.iter().filter(|y| x > y).count()).sum();
    let (n1, n) = (a.len(), pooled.len());
    let (mut le, mut ge, mut total) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != n1 {
            continue;
        }
        // U = number of (first-sample, second-sample) pairs with the first ranked higher
        let mut u = 0usize;
        let mut seen_second = 0usize;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                u += seen_second;
            } else {
                seen_second += 1;
            }
        }
        total += 1;
        le += (u <= u_obs) as u64;
        ge += (u >= u_obs) as u64;
    }
    (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
}

fn mann_whitney() -> Outcome {
    let base = mann_whitney_p(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
    let mut rng = seeded_rng(9, 0);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        use rand::seq::SliceRandom;
        use rand::Rng;
        let n1 = rng.random_range(1..=8);
        let n2 = rng.random_range(1..=8);
        let mut vals: Vec<f64> = (0..(n1 + n2)).map(|i| i as f64 * 1.5 + 0.25).collect();
        vals.shuffle(&mut rng);
        let (a, b) = vals.split_at(n1);
        let diff = (mann_whitney_p(a, b).unwrap() - enumerate_p(a, b)).abs();
        worst = worst.max(diff);
    }
    outcome(
        (base - 0.1).abs() < 1e-15 && worst <= 1e-12,
        format!("p([1,2,3],[4,5,6]) = {base}, max deviation from enumeration {worst:.1e}"),
    )
}

// 10 -----------------------------------------------------------------------

fn penalty_rule() -> Outcome {
    let g = std::sync::Arc::new(GraphSpec::Path(200).load().unwrap());
    let w = gen_uniform_weights(200, &mut seeded_rng(10, 0));
    let inst = ProblemInstance::dominating_set(g, w).unwrap();
    let level = ConfidenceLevel::new(0.01).unwrap();
    let res = run_gsemo3d(&inst, 5, Init::Zeros, &mut seeded_rng(10, 1)).unwrap();
    let (value, feasible) = extract_final(&inst, &level, &res, DEFAULT_PENALTY);
    let s = summarize(&[value, 42.0], DEFAULT_PENALTY, &[feasible, true]).unwrap();

    let mut cfg = ExperimentConfig::new(
        vec!["gsemo3d_0".parse().unwrap()],
        ProblemSpec::DominatingSet {
            graph: GraphSpec::Path(200),
            weights: WeightMode::Uniform,
        },
    );
    cfg.t_max = 5;
    cfg.runs = 3;
    cfg.betas = vec![0.01];
    let rep = run_experiment(&cfg).unwrap();
    let all_penalized = rep.runs.iter().all(|r| !r.feasible && r.final_w == 1e10);
    outcome(
        !feasible && value == 1e10 && s.values[0] == 1e10 && s.mean == (1e10 + 42.0) / 2.0 && all_penalized,
        format!(
            "under-budgeted run contributes {value:e}, summary mean {:.1}, experiment rows penalized: {all_penalized}",
            s.mean
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "oracle optimality", oracle_optimality()),
        (2, "greedy characterization", greedy_equivalence()),
        (3, "archive invariants", archive_invariants()),
        (
            4,
            "schedule formula and parameter collapse",
            schedule_formula(),
        ),
        (5, "quantile accuracy", quantile_accuracy()),
        (6, "mutation distribution", mutation_distribution()),
    ];
    let start = Instant::now();
    let report = run_experiment(&desk_scale_config()).unwrap();
    let elapsed = start.elapsed();
    results.push((7, "desk-scale trend", desk_scale(&report, elapsed)));
    results.push((8, "population-size trend", population_trend(&report)));
    results.push((9, "Mann-Whitney", mann_whitney()));
    results.push((10, "penalty rule", penalty_rule()));

    let mut failed = 0;
    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id:>2} {name}: {}", o.detail);
        failed += (!o.pass) as usize;
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
