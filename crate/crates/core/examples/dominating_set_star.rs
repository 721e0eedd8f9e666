//! Fast SW-GSEMO3D on a star: the centre alone dominates every node, so it
//! is the optimum at every confidence level.
//!
//! `cargo run --release --example dominating_set_star`

use std::sync::Arc;

use swgsemo::bench::star_graph;
use swgsemo::engine::{run_fast_sw_gsemo3d, Init, SlidingParams};
use swgsemo::problems::{gen_uniform_weights, surrogate, DEFAULT_BETAS};
use swgsemo::{seeded_rng, ConfidenceLevel, ProblemInstance};

fn main() -> swgsemo::Result<()> {
    let g = Arc::new(star_graph(10));
    let weights = gen_uniform_weights(g.n(), &mut seeded_rng(0, 0));
    let inst = ProblemInstance::dominating_set(g, weights)?;

    let res = run_fast_sw_gsemo3d(
        &inst,
        100_000,
        SlidingParams::FAST,
        Init::Zeros,
        &mut seeded_rng(0, 1),
    )?;
    println!(
        "population {} (max {}), t0 = {:?}",
        res.population.len(),
        res.max_pop_overall,
        res.t0
    );

    let feasible: Vec<_> = res
        .population
        .iter()
        .filter(|m| m.obj.c == inst.bound())
        .collect();
    for m in &feasible {
        println!(
            "feasible: nodes {:?}, mu {}, var {}",
            m.x.iter_ones().collect::<Vec<_>>(),
            m.obj.mu,
            m.obj.var
        );
    }
    for beta in DEFAULT_BETAS {
        let k = ConfidenceLevel::new(beta)?.k_alpha();
        let w = feasible
            .iter()
            .map(|m| surrogate(m.obj.mu, m.obj.var, k))
            .fold(f64::INFINITY, f64::min);
        println!("beta {beta:>6.0e}: w_hat = {w:.3}");
    }
    Ok(())
}
