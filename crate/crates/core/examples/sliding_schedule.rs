//! Prints the selection window over time for a few parameter settings.
//!
//! `cargo run --example sliding_schedule`

use swgsemo::engine::{sliding_window, SlidingParams};

fn main() {
    let (t_max, bound) = (10_000u64, 100u32);
    let settings = [
        ("plain", SlidingParams::PLAIN),
        (
            "a=0.5",
            SlidingParams {
                a: 0.5,
                ..SlidingParams::PLAIN
            },
        ),
        ("fast", SlidingParams::FAST),
    ];
    print!("{:>6}", "t");
    for (name, _) in &settings {
        print!(" {name:>12}");
    }
    println!();
    for t in (0..=10).map(|i| (i * t_max / 10).max(1)) {
        print!("{t:>6}");
        for (_, p) in &settings {
            let w = sliding_window(t, t_max, bound, p);
            print!(" {:>12}", format!("[{}, {}]", w.lo, w.hi));
        }
        println!();
    }
}
