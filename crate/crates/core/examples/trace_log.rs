//! Writes a line-delimited JSON trace of a Fast SW-GSEMO3D run.
//!
//! `cargo run --release --example trace_log -- trace.jsonl`
//!
//! Without an argument every 500th record goes to stdout.

use std::error::Error;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::sync::Arc;

use swgsemo::bench::erdos_renyi;
use swgsemo::engine::{run, Algorithm, Init, SlidingParams, TraceWriter};
use swgsemo::problems::gen_uniform_weights;
use swgsemo::{seeded_rng, ProblemInstance};

fn main() -> Result<(), Box<dyn Error>> {
    let g = Arc::new(erdos_renyi(60, 0.08, 2));
    let weights = gen_uniform_weights(g.n(), &mut seeded_rng(2, 0));
    let inst = ProblemInstance::dominating_set(g, weights)?;

    let out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let every = if std::env::args().nth(1).is_some() {
        1
    } else {
        500
    };
    let mut trace = TraceWriter::every(out, every);
    let res = run(
        &inst,
        Algorithm::FastSwGsemo3d(SlidingParams::FAST),
        10_000,
        Init::Random,
        &mut seeded_rng(2, 1),
        &mut trace,
    )?;
    trace.finish()?;
    eprintln!(
        "final population {}, c_max {:?}",
        res.population.len(),
        res.c_max
    );
    Ok(())
}
