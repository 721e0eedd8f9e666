//! The (1+1) EA baseline: one run per confidence level, each with its own
//! budget, against the exact optimum of a small instance.
//!
//! `cargo run --release --example one_plus_one_ea`

use std::sync::Arc;

use swgsemo::bench::path_graph;
use swgsemo::engine::{default_penalty, run_one_plus_one_ea};
use swgsemo::oracles::brute_force_front;
use swgsemo::problems::{gen_uniform_weights, surrogate, DEFAULT_BETAS};
use swgsemo::{seeded_rng, ConfidenceLevel, ProblemInstance};

fn main() -> swgsemo::Result<()> {
    let g = Arc::new(path_graph(16));
    let weights = gen_uniform_weights(g.n(), &mut seeded_rng(3, 0));
    let inst = ProblemInstance::dominating_set(g, weights)?;
    let front = brute_force_front(&inst)?;
    let feasible = &front[&inst.bound()];

    let k_max = ConfidenceLevel::new(DEFAULT_BETAS[DEFAULT_BETAS.len() - 1])?.k_alpha();
    let r = default_penalty(inst.weights(), k_max);
    println!("penalty factor R = {r:.1}");
    for (i, beta) in DEFAULT_BETAS.into_iter().enumerate() {
        let level = ConfidenceLevel::new(beta)?;
        let opt = feasible
            .iter()
            .map(|p| surrogate(p.mu, p.var, level.k_alpha()))
            .fold(f64::INFINITY, f64::min);
        let res = run_one_plus_one_ea(&inst, &level, 50_000, &mut seeded_rng(3, 2 + i as u64), r)?;
        println!(
            "beta {beta:>6.0e}: ea {:>10.3} optimum {opt:>10.3} feasible {}",
            res.surrogate, res.feasible
        );
    }
    Ok(())
}
