//! Prints `K_alpha` for the default confidence levels.
//!
//! `cargo run --example quantile_table`

use swgsemo::problems::{normal_cdf, DEFAULT_BETAS};
use swgsemo::ConfidenceLevel;

fn main() -> swgsemo::Result<()> {
    println!("{:>8} {:>18} {:>14}", "beta", "alpha", "K_alpha");
    for beta in DEFAULT_BETAS {
        let level = ConfidenceLevel::new(beta)?;
        let k = level.k_alpha();
        // the round trip through the CDF recovers the tail probability
        assert!((normal_cdf(-k) / beta - 1.0).abs() < 1e-8);
        println!("{beta:>8.0e} {:>18.14} {k:>14.10}", level.alpha());
    }
    Ok(())
}
