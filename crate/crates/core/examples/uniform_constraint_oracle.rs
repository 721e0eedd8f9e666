//! Uniform constraint `|x|_1 >= k`: compares the breakpoint greedy front,
//! brute force and SW-GSEMO3D on one random instance.
//!
//! `cargo run --release --example uniform_constraint_oracle`

use swgsemo::engine::{run_sw_gsemo3d, Init};
use swgsemo::oracles::{brute_force_front, compute_breakpoints, front_values, greedy_front};
use swgsemo::problems::{gen_integer_weights, surrogate};
use swgsemo::{seeded_rng, ConfidenceLevel, ProblemInstance};

fn main() -> swgsemo::Result<()> {
    let n = 12;
    let weights = gen_integer_weights(n, 1..=10, 1..=10, &mut seeded_rng(1, 0));
    println!("mu  = {:?}", weights.mu());
    println!("var = {:?}", weights.var());

    let bp = compute_breakpoints(&weights);
    println!(
        "{} breakpoints, {} orderings to check",
        bp.lambdas.len() - 2,
        bp.midpoints.len()
    );

    let inst = ProblemInstance::uniform_constraint(weights.clone());
    let brute = front_values(&brute_force_front(&inst)?);
    let greedy = greedy_front(&weights);

    let t_max = (200.0 * (n * n) as f64 * (n as f64).ln()) as u64;
    let run = run_sw_gsemo3d(&inst, t_max, Init::Zeros, &mut seeded_rng(1, 1))?;

    let level = ConfidenceLevel::new(0.01)?;
    let k = level.k_alpha();
    let best = |pts: &mut dyn Iterator<Item = (f64, f64)>| {
        pts.map(|(m, v)| surrogate(m, v, k))
            .fold(f64::INFINITY, f64::min)
    };
    println!("\nbeta = 0.01, K = {k:.4}");
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>6}",
        "k", "brute", "greedy", "sw-gsemo3d", "front"
    );
    for c in 0..=n as u32 {
        let b = best(&mut brute[&c].iter().copied());
        let g = best(&mut greedy[&c].iter().copied());
        let s = best(
            &mut run
                .population
                .iter()
                .filter(|m| m.obj.c == c)
                .map(|m| (m.obj.mu, m.obj.var)),
        );
        println!(
            "{c:>3} {b:>12.4} {g:>12.4} {s:>12.4} {:>6}",
            brute[&c].len()
        );
    }
    println!(
        "\nfinal population {} after {} evaluations",
        run.population.len(),
        run.evals
    );
    Ok(())
}
