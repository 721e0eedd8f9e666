//! Experiment harness: configuration, parallel runs, result extraction and
//! CSV output.
//!
//! Run `r` uses seed `base_seed + r` for everything: weights are drawn from
//! stream 0 of that seed, archive-based algorithms from stream 1 and the
//! (1+1) EA for the `i`-th confidence level from stream `2 + i`. All
//! algorithms therefore see the same instances, and results do not depend
//! on the number of worker threads.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{self, default_penalty, Algorithm, Init, RunResult, SlidingParams};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, Graph};
use crate::problems::{
    gen_degree_weights, gen_uniform_weights, surrogate, ConfidenceLevel, ProblemInstance,
    DEFAULT_BETAS,
};
use crate::seeded_rng;
use crate::stats::{mann_whitney_p, summarize, SampleSummary, DEFAULT_PENALTY};

/// p-values at or below this count as significant in the summary tables.
pub const SIGNIFICANCE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgoKind {
    Gsemo2d,
    Gsemo3d,
    SwGsemo3d,
    FastSwGsemo3d,
    OnePlusOneEa,
}

impl AlgoKind {
    fn name(self) -> &'static str {
        match self {
            Self::Gsemo2d => "gsemo2d",
            Self::Gsemo3d => "gsemo3d",
            Self::SwGsemo3d => "sw_gsemo3d",
            Self::FastSwGsemo3d => "fast_sw_gsemo3d",
            Self::OnePlusOneEa => "one_plus_one_ea",
        }
    }
}

/// An algorithm plus an optional initialization override.
///
/// Written as the algorithm name, with a `_0` suffix for zeros
/// initialization (`fast_sw_gsemo3d_0`). Without the suffix the
/// experiment-wide default applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgoSpec {
    pub kind: AlgoKind,
    pub init: Option<Init>,
}

impl AlgoSpec {
    pub fn new(kind: AlgoKind, init: Option<Init>) -> Self {
        Self { kind, init }
    }
}

impl fmt::Display for AlgoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        if self.init == Some(Init::Zeros) {
            f.write_str("_0")?;
        }
        Ok(())
    }
}

impl FromStr for AlgoSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, init) = match s.strip_suffix("_0") {
            Some(b) => (b, Some(Init::Zeros)),
            None => (s, None),
        };
        let kind = match base {
            "gsemo2d" => AlgoKind::Gsemo2d,
            "gsemo3d" => AlgoKind::Gsemo3d,
            "sw_gsemo3d" => AlgoKind::SwGsemo3d,
            "fast_sw_gsemo3d" => AlgoKind::FastSwGsemo3d,
            "one_plus_one_ea" | "ea" => AlgoKind::OnePlusOneEa,
            _ => return Err(Error::Config(format!("unknown algorithm '{s}'"))),
        };
        if kind == AlgoKind::OnePlusOneEa && init.is_some() {
            return Err(Error::Config("the (1+1) EA always starts at random".into()));
        }
        Ok(Self { kind, init })
    }
}

/// Where the graph comes from: a file, or `star:n`, `path:n`, `er:n:p:seed`.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpec {
    File(PathBuf),
    /// One centre and `n - 1` leaves.
    Star(usize),
    Path(usize),
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Config(format!("bad graph spec '{s}'")))
        };
        match parts.as_slice() {
            ["star", n] => Ok(Self::Star(num(n)?)),
            ["path", n] => Ok(Self::Path(num(n)?)),
            ["er", n, p, seed] => {
                let p: f64 = p
                    .parse()
                    .map_err(|_| Error::Config(format!("bad edge probability in '{s}'")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Config(format!(
                        "edge probability {p} outside [0, 1]"
                    )));
                }
                let seed = seed
                    .parse()
                    .map_err(|_| Error::Config(format!("bad seed in '{s}'")))?;
                Ok(Self::ErdosRenyi {
                    n: num(n)?,
                    p,
                    seed,
                })
            }
            _ => Ok(Self::File(PathBuf::from(s))),
        }
    }
}

impl GraphSpec {
    pub fn load(&self) -> Result<Graph> {
        let g = match self {
            Self::File(path) => {
                return load_edge_list(std::io::BufReader::new(fs::File::open(path)?))
            }
            Self::Star(n) => star_graph(*n),
            Self::Path(n) => path_graph(*n),
            Self::ErdosRenyi { n, p, seed } => erdos_renyi(*n, *p, *seed),
        };
        if g.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(g)
    }
}

pub fn star_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (0, v)))
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// `G(n, p)`: every pair `u < v` independently with probability `p`,
/// visited in lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = seeded_rng(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Uniform,
    Degree,
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "degree" => Ok(Self::Degree),
            _ => Err(Error::Config(format!("unknown weight mode '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProblemSpec {
    DominatingSet {
        graph: GraphSpec,
        weights: WeightMode,
    },
    /// `n` items with uniform-setting weights, feasible iff `|x|_1 >= k`.
    UniformK { n: usize, k: u32 },
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgoSpec>,
    pub problem: ProblemSpec,
    /// Initialization for algorithms without a `_0` suffix.
    pub init: Init,
    pub t_max: u64,
    /// Budget of each (1+1) EA run; one run per confidence level.
    pub ea_t_max: u64,
    pub runs: usize,
    pub base_seed: u64,
    pub betas: Vec<f64>,
    pub sliding: SlidingParams,
    /// Value recorded for runs without a feasible solution.
    pub penalty: f64,
    /// Worker threads; 0 uses all cores.
    pub threads: usize,
}

impl ExperimentConfig {
    pub fn new(algorithms: Vec<AlgoSpec>, problem: ProblemSpec) -> Self {
        Self {
            algorithms,
            problem,
            init: Init::Random,
            t_max: 10_000_000,
            ea_t_max: 1_000_000,
            runs: 30,
            base_seed: 0,
            betas: DEFAULT_BETAS.to_vec(),
            sliding: SlidingParams::FAST,
            penalty: DEFAULT_PENALTY,
            threads: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.t_max == 0 || self.ea_t_max == 0 {
            return Err(Error::Config("budgets must be at least 1".into()));
        }
        if self.betas.is_empty() {
            return Err(Error::Config("no confidence levels".into()));
        }
        for &b in &self.betas {
            ConfidenceLevel::new(b)?;
        }
        self.sliding.validate()?;
        if let ProblemSpec::UniformK { n, k } = self.problem {
            if n == 0 || k as usize > n {
                return Err(Error::Config(format!(
                    "uniform-k needs 1 <= n and k <= n, got n={n}, k={k}"
                )));
            }
        }
        Ok(())
    }

    fn levels(&self) -> Result<Vec<ConfidenceLevel>> {
        self.betas
            .iter()
            .map(|&b| ConfidenceLevel::new(b))
            .collect()
    }
}

/// Builds the instance of run `r` for a problem specification.
pub fn build_instance(
    problem: &ProblemSpec,
    graph: Option<&Arc<Graph>>,
    seed: u64,
) -> Result<ProblemInstance> {
    let mut rng = seeded_rng(seed, 0);
    match problem {
        ProblemSpec::DominatingSet { weights, .. } => {
            let g = graph.ok_or_else(|| Error::Config("dominating set needs a graph".into()))?;
            let w = match weights {
                WeightMode::Uniform => gen_uniform_weights(g.n(), &mut rng),
                WeightMode::Degree => gen_degree_weights(g, &mut rng),
            };
            ProblemInstance::dominating_set(Arc::clone(g), w)
        }
        ProblemSpec::UniformK { n, k } => {
            ProblemInstance::uniform_constraint(gen_uniform_weights(*n, &mut rng)).with_target(*k)
        }
    }
}

/// Best surrogate weight over feasible population members, or
/// `(penalty, false)` if there is none.
pub fn extract_final(
    inst: &ProblemInstance,
    level: &ConfidenceLevel,
    result: &RunResult,
    penalty: f64,
) -> (f64, bool) {
    result
        .population
        .iter()
        .filter(|m| inst.is_feasible(m.obj.c))
        .map(|m| surrogate(m.obj.mu, m.obj.var, level.k_alpha()))
        .min_by(f64::total_cmp)
        .map_or((penalty, false), |w| (w, true))
}

/// One line of `runs.csv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub beta: f64,
    pub algo: String,
    pub run: usize,
    pub final_w: f64,
    pub feasible: bool,
    pub max_pop_overall: usize,
    pub max_pop_window: usize,
    pub evals: u64,
}

/// One line of `summary.csv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub beta: f64,
    pub algo: String,
    pub mean: f64,
    pub std: f64,
    pub feasible: usize,
    pub runs: usize,
}

/// One line of `pvalues.csv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PValueRow {
    pub beta: f64,
    pub algo_a: String,
    pub algo_b: String,
    pub p: f64,
    pub significant: bool,
}

/// One line of `population.csv`: maximum population sizes over runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PopulationRow {
    pub algo: String,
    pub mean_max_pop_overall: f64,
    pub std_max_pop_overall: f64,
    pub mean_max_pop_window: f64,
    pub std_max_pop_window: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentReport {
    /// Sorted by `(beta, algorithm, run)` in configuration order.
    pub runs: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub pvalues: Vec<PValueRow>,
    pub population: Vec<PopulationRow>,
}

impl ExperimentReport {
    pub fn summary_for(&self, beta: f64, algo: &str) -> Option<&SummaryRow> {
        self.summary
            .iter()
            .find(|s| s.beta == beta && s.algo == algo)
    }

    pub fn population_for(&self, algo: &str) -> Option<&PopulationRow> {
        self.population.iter().find(|p| p.algo == algo)
    }

    /// Writes `runs.csv`, `summary.csv`, `pvalues.csv` and `population.csv`.
    pub fn write_csvs(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        write_rows(&dir.join("runs.csv"), &self.runs)?;
        write_rows(&dir.join("summary.csv"), &self.summary)?;
        write_rows(&dir.join("pvalues.csv"), &self.pvalues)?;
        write_rows(&dir.join("population.csv"), &self.population)?;
        Ok(())
    }
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Per-run outcome before it is split into `RunRecord`s.
struct JobOutput {
    algo: usize,
    run: usize,
    /// Indexed by confidence level.
    per_level: Vec<(f64, bool)>,
    max_pop_overall: usize,
    max_pop_window: usize,
    evals: Vec<u64>,
}

/// Executes every `(algorithm, run)` pair and aggregates the results.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| run_in_pool(cfg))
}

fn run_in_pool(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let graph = match &cfg.problem {
        ProblemSpec::DominatingSet { graph, .. } => Some(Arc::new(graph.load()?)),
        ProblemSpec::UniformK { .. } => None,
    };
    let levels = cfg.levels()?;
    let k_max = levels
        .iter()
        .map(ConfidenceLevel::k_alpha)
        .fold(0.0, f64::max);

    let instances: Vec<ProblemInstance> = (0..cfg.runs)
        .into_par_iter()
        .map(|r| build_instance(&cfg.problem, graph.as_ref(), cfg.base_seed + r as u64))
        .collect::<Result<_>>()?;
    log::info!(
        "{} runs x {} algorithms on n = {}",
        cfg.runs,
        cfg.algorithms.len(),
        instances[0].n()
    );

    let jobs: Vec<(usize, usize)> = (0..cfg.algorithms.len())
        .flat_map(|a| (0..cfg.runs).map(move |r| (a, r)))
        .collect();
    let outputs: Vec<JobOutput> = jobs
        .into_par_iter()
        .map(|(a, r)| run_job(cfg, &levels, k_max, &instances[r], a, r))
        .collect::<Result<_>>()?;

    Ok(aggregate(cfg, outputs))
}

fn run_job(
    cfg: &ExperimentConfig,
    levels: &[ConfidenceLevel],
    k_max: f64,
    inst: &ProblemInstance,
    algo: usize,
    run: usize,
) -> Result<JobOutput> {
    let spec = cfg.algorithms[algo];
    let seed = cfg.base_seed + run as u64;
    let init = spec.init.unwrap_or(cfg.init);
    let algorithm = match spec.kind {
        AlgoKind::OnePlusOneEa => {
            let r = default_penalty(inst.weights(), k_max);
            let mut per_level = Vec::with_capacity(levels.len());
            let mut evals = Vec::with_capacity(levels.len());
            for (i, level) in levels.iter().enumerate() {
                let mut rng = seeded_rng(seed, 2 + i as u64);
                let res = engine::run_one_plus_one_ea(inst, level, cfg.ea_t_max, &mut rng, r)?;
                assert!(res.evals <= cfg.ea_t_max);
                per_level.push(if res.feasible {
                    (res.surrogate, true)
                } else {
                    (cfg.penalty, false)
                });
                evals.push(res.evals);
            }
            return Ok(JobOutput {
                algo,
                run,
                per_level,
                max_pop_overall: 1,
                max_pop_window: 1,
                evals,
            });
        }
        AlgoKind::Gsemo2d => Algorithm::Gsemo2d {
            penalty: default_penalty(inst.weights(), k_max),
        },
        AlgoKind::Gsemo3d => Algorithm::Gsemo3d,
        AlgoKind::SwGsemo3d => Algorithm::SwGsemo3d,
        AlgoKind::FastSwGsemo3d => Algorithm::FastSwGsemo3d(cfg.sliding),
    };
    let mut rng = seeded_rng(seed, 1);
    let res = engine::run(
        inst,
        algorithm,
        cfg.t_max,
        init,
        &mut rng,
        &mut engine::NoObserver,
    )?;
    assert!(res.evals <= cfg.t_max);
    log::debug!("{spec} run {run}: population {}", res.population.len());
    Ok(JobOutput {
        algo,
        run,
        per_level: levels
            .iter()
            .map(|l| extract_final(inst, l, &res, cfg.penalty))
            .collect(),
        max_pop_overall: res.max_pop_overall,
        max_pop_window: res.max_pop_window,
        evals: vec![res.evals; levels.len()],
    })
}

fn aggregate(cfg: &ExperimentConfig, mut outputs: Vec<JobOutput>) -> ExperimentReport {
    outputs.sort_by_key(|o| (o.algo, o.run));
    let names: Vec<String> = cfg.algorithms.iter().map(ToString::to_string).collect();
    let mut report = ExperimentReport::default();

    for (li, &beta) in cfg.betas.iter().enumerate() {
        let mut samples: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for o in &outputs {
            let (w, ok) = o.per_level[li];
            samples[o.algo].push(w);
            report.runs.push(RunRecord {
                beta,
                algo: names[o.algo].clone(),
                run: o.run,
                final_w: w,
                feasible: ok,
                max_pop_overall: o.max_pop_overall,
                max_pop_window: o.max_pop_window,
                evals: o.evals[li],
            });
        }
        for (a, name) in names.iter().enumerate() {
            let flags: Vec<bool> = outputs
                .iter()
                .filter(|o| o.algo == a)
                .map(|o| o.per_level[li].1)
                .collect();
            // values already carry the penalty for infeasible runs
            let s = summarize(&samples[a], cfg.penalty, &flags).expect("runs >= 1");
            report.summary.push(SummaryRow {
                beta,
                algo: name.clone(),
                mean: s.mean,
                std: s.std,
                feasible: flags.iter().filter(|&&f| f).count(),
                runs: s.count,
            });
        }
        for a in 0..names.len() {
            for b in a + 1..names.len() {
                let p = mann_whitney_p(&samples[a], &samples[b]).expect("runs >= 1");
                report.pvalues.push(PValueRow {
                    beta,
                    algo_a: names[a].clone(),
                    algo_b: names[b].clone(),
                    p,
                    significant: p <= SIGNIFICANCE,
                });
            }
        }
    }

    for (a, name) in names.iter().enumerate() {
        let overall: Vec<f64> = outputs
            .iter()
            .filter(|o| o.algo == a)
            .map(|o| o.max_pop_overall as f64)
            .collect();
        let window: Vec<f64> = outputs
            .iter()
            .filter(|o| o.algo == a)
            .map(|o| o.max_pop_window as f64)
            .collect();
        let so = SampleSummary::from_values(overall).expect("runs >= 1");
        let sw = SampleSummary::from_values(window).expect("runs >= 1");
        report.population.push(PopulationRow {
            algo: name.clone(),
            mean_max_pop_overall: so.mean,
            std_max_pop_overall: so.std,
            mean_max_pop_window: sw.mean,
            std_max_pop_window: sw.std,
        });
    }
    report
}
