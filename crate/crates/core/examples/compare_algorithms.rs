//! Runs all five algorithms on a random graph through the experiment
//! harness and prints the summary with Mann-Whitney p-values.
//!
//! `cargo run --release --example compare_algorithms`

use swgsemo::bench::{run_experiment, ExperimentConfig, GraphSpec, ProblemSpec, WeightMode};

fn main() -> swgsemo::Result<()> {
    let algos = [
        "gsemo2d",
        "gsemo3d",
        "fast_sw_gsemo3d",
        "fast_sw_gsemo3d_0",
        "one_plus_one_ea",
    ];
    let mut cfg = ExperimentConfig::new(
        algos
            .iter()
            .map(|a| a.parse())
            .collect::<swgsemo::Result<_>>()?,
        ProblemSpec::DominatingSet {
            graph: GraphSpec::ErdosRenyi {
                n: 150,
                p: 0.03,
                seed: 1,
            },
            weights: WeightMode::Degree,
        },
    );
    cfg.t_max = 100_000;
    cfg.ea_t_max = 30_000;
    cfg.runs = 10;
    cfg.betas = vec![0.2, 0.01, 1e-6, 1e-14];

    let report = run_experiment(&cfg)?;
    for s in &report.summary {
        println!(
            "beta {:>6.0e} {:<18} mean {:>14.2} std {:>12.2} feasible {}/{}",
            s.beta, s.algo, s.mean, s.std, s.feasible, s.runs
        );
    }
    println!();
    for p in report.pvalues.iter().filter(|p| p.algo_a == "gsemo3d") {
        let mark = if p.significant { "*" } else { "" };
        println!(
            "beta {:>6.0e} {} vs {}: p = {:.4}{mark}",
            p.beta, p.algo_a, p.algo_b, p.p
        );
    }
    Ok(())
}
