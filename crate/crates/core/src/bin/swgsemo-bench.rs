use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use swgsemo::bench::{
    run_experiment, AlgoSpec, ExperimentConfig, GraphSpec, ProblemSpec, WeightMode,
};
use swgsemo::engine::{Init, SlidingParams};
use swgsemo::problems::DEFAULT_BETAS;
use swgsemo::stats::DEFAULT_PENALTY;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Problem {
    Domset,
    UniformK,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Weights {
    Uniform,
    Degree,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InitArg {
    Zeros,
    Random,
}

/// Runs chance-constrained Pareto optimization experiments and writes
/// runs.csv, summary.csv, pvalues.csv and population.csv.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Comma-separated algorithms: gsemo2d, gsemo3d, sw_gsemo3d,
    /// fast_sw_gsemo3d, one_plus_one_ea. A `_0` suffix forces zeros init.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "gsemo3d,fast_sw_gsemo3d,fast_sw_gsemo3d_0"
    )]
    algo: Vec<String>,

    /// Edge-list file, or star:N, path:N, er:N:P:SEED.
    #[arg(long)]
    graph: Option<String>,

    #[arg(long, value_enum, default_value = "domset")]
    problem: Problem,

    /// Item count for uniform-k.
    #[arg(long)]
    n: Option<usize>,

    /// Required cardinality for uniform-k.
    #[arg(long)]
    k: Option<u32>,

    #[arg(long, value_enum, default_value = "uniform")]
    weights: Weights,

    /// Initialization for algorithms without a `_0` suffix.
    #[arg(long, value_enum, default_value = "random")]
    init: InitArg,

    /// Fitness evaluations per run.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,

    /// Evaluations per confidence level for the (1+1) EA.
    #[arg(long, default_value_t = 1_000_000)]
    ea_budget: u64,

    #[arg(long, default_value_t = 30)]
    runs: usize,

    /// Run r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_BETAS.to_vec())]
    betas: Vec<f64>,

    #[arg(long, default_value_t = SlidingParams::FAST.t_frac)]
    tfrac: f64,

    #[arg(long, default_value_t = SlidingParams::FAST.std)]
    std: u32,

    #[arg(long, default_value_t = SlidingParams::FAST.a)]
    a: f64,

    #[arg(long, default_value_t = SlidingParams::FAST.epsilon)]
    eps: u32,

    /// Value recorded for runs without a feasible solution.
    #[arg(long, default_value_t = DEFAULT_PENALTY)]
    penalty: f64,

    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,

    #[arg(long, default_value = "results")]
    out: PathBuf,
}

fn config(args: &Args) -> swgsemo::Result<ExperimentConfig> {
    let algorithms = args
        .algo
        .iter()
        .map(|s| s.parse::<AlgoSpec>())
        .collect::<swgsemo::Result<_>>()?;
    let problem = match args.problem {
        Problem::Domset => {
            let graph: GraphSpec = args
                .graph
                .as_deref()
                .ok_or_else(|| swgsemo::Error::Config("--graph is required for domset".into()))?
                .parse()?;
            let weights = match args.weights {
                Weights::Uniform => WeightMode::Uniform,
                Weights::Degree => WeightMode::Degree,
            };
            ProblemSpec::DominatingSet { graph, weights }
        }
        Problem::UniformK => {
            if matches!(args.weights, Weights::Degree) {
                return Err(swgsemo::Error::Config("degree weights need a graph".into()));
            }
            let n = args
                .n
                .ok_or_else(|| swgsemo::Error::Config("--n is required for uniform-k".into()))?;
            let k = args
                .k
                .ok_or_else(|| swgsemo::Error::Config("--k is required for uniform-k".into()))?;
            ProblemSpec::UniformK { n, k }
        }
    };
    let mut cfg = ExperimentConfig::new(algorithms, problem);
    cfg.init = match args.init {
        InitArg::Zeros => Init::Zeros,
        InitArg::Random => Init::Random,
    };
    cfg.t_max = args.budget;
    cfg.ea_t_max = args.ea_budget;
    cfg.runs = args.runs;
    cfg.base_seed = args.seed;
    cfg.betas = args.betas.clone();
    cfg.sliding = SlidingParams {
        t_frac: args.tfrac,
        std: args.std,
        a: args.a,
        epsilon: args.eps,
        c_max_tracking: true,
    };
    cfg.penalty = args.penalty;
    cfg.threads = args.threads;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    let result = config(&args).and_then(|cfg| {
        let report = run_experiment(&cfg)?;
        report.write_csvs(&args.out)?;
        Ok(report)
    });
    match result {
        Ok(report) => {
            println!(
                "{:>8} {:<20} {:>16} {:>14} {:>9}",
                "beta", "algo", "mean", "std", "feasible"
            );
            for s in &report.summary {
                println!(
                    "{:>8.0e} {:<20} {:>16.4} {:>14.4} {:>5}/{:<3}",
                    s.beta, s.algo, s.mean, s.std, s.feasible, s.runs
                );
            }
            println!("results written to {}", args.out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
