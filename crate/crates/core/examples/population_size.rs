//! Maximum population sizes for random and all-zeros initialization,
//! overall and inside the selection window.
//!
//! `cargo run --release --example population_size`

use std::sync::Arc;

use swgsemo::bench::erdos_renyi;
use swgsemo::engine::{run_fast_sw_gsemo3d, run_gsemo3d, Init, SlidingParams};
use swgsemo::problems::gen_degree_weights;
use swgsemo::{seeded_rng, ProblemInstance};

fn main() -> swgsemo::Result<()> {
    let g = Arc::new(erdos_renyi(300, 0.02, 5));
    let weights = gen_degree_weights(&g, &mut seeded_rng(5, 0));
    let inst = ProblemInstance::dominating_set(g, weights)?;
    let t_max = 100_000;

    println!("{:<22} {:>10} {:>10}", "algorithm", "overall", "window");
    for (name, init) in [
        ("fast_sw_gsemo3d", Init::Random),
        ("fast_sw_gsemo3d_0", Init::Zeros),
    ] {
        let r = run_fast_sw_gsemo3d(
            &inst,
            t_max,
            SlidingParams::FAST,
            init,
            &mut seeded_rng(5, 1),
        )?;
        println!(
            "{name:<22} {:>10} {:>10}",
            r.max_pop_overall, r.max_pop_window
        );
    }
    let r = run_gsemo3d(&inst, t_max, Init::Random, &mut seeded_rng(5, 1))?;
    println!(
        "{:<22} {:>10} {:>10}",
        "gsemo3d", r.max_pop_overall, r.max_pop_window
    );

    let largest = r
        .max_size_by_c
        .iter()
        .max_by_key(|(_, &s)| s)
        .map(|(c, s)| (*c, *s));
    println!("gsemo3d largest bucket (c, size): {largest:?}");
    Ok(())
}
