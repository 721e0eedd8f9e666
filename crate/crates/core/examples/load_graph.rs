//! Loads an edge list and reports its size and a greedy dominating set.
//!
//! `cargo run --example load_graph -- path/to/graph.edges`
//!
//! Without an argument a small built-in graph is used.

use std::error::Error;
use std::fs::File;
use std::io::BufReader;

use swgsemo::graph::{count_dominated, load_edge_list};
use swgsemo::{BitSolution, Graph};

fn main() -> Result<(), Box<dyn Error>> {
    let g = match std::env::args().nth(1) {
        Some(path) => load_edge_list(BufReader::new(File::open(path)?))?,
        None => {
            Graph::parse("% two triangles joined by a bridge\n1 2\n2 3\n3 1\n3 4\n4 5\n5 6\n6 4\n")?
        }
    };
    let degrees = g.degrees();
    println!(
        "n = {}, m = {}, max degree = {}",
        g.n(),
        g.edge_count(),
        degrees.iter().max().unwrap_or(&0)
    );

    // pick the node that dominates the most new nodes until everything is covered
    let mut x = BitSolution::zeros(g.n());
    while count_dominated(&g, &x)? < g.n() {
        let best = (0..g.n())
            .filter(|&v| !x.get(v))
            .max_by_key(|&v| {
                let mut y = x.clone();
                y.set(v, true);
                count_dominated(&g, &y).unwrap()
            })
            .expect("some node is unselected");
        x.set(best, true);
    }
    let chosen: Vec<usize> = x.iter_ones().collect();
    println!("greedy dominating set of size {}: {chosen:?}", chosen.len());
    Ok(())
}
