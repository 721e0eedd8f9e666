//! Sliding-window Pareto optimization for chance-constrained problems.
//!
//! The crate models problems where a bit string `x` selects items with
//! independent normally distributed weights `N(mu_i, sigma_i^2)` and a
//! deterministic, integer-valued constraint function `c(x)`. Every search
//! point is mapped to the objective triple `(mu(x), v(x), c(x))`: expected
//! weight and variance are minimized, the constraint value is maximized.
//! A single population of mutually non-dominating solutions then contains
//! the optimum for every confidence level at once, which is read off with
//! the surrogate `mu(x) + K_alpha * sqrt(v(x))`.
//!
//! Modules:
//!
//! - [`graph`]: edge-list loading and domination counting.
//! - [`problems`]: stochastic weights, the dominating-set and uniform-constraint
//!   models, the normal quantile and the surrogate weight.
//! - [`archive`]: the Pareto population with per-constraint-value buckets.
//! - [`engine`]: mutation, the sliding-window schedule and the algorithms
//!   (SW-GSEMO3D, Fast SW-GSEMO3D, GSEMO2D/3D and the (1+1) EA).
//! - [`oracles`]: brute-force fronts and the lambda-breakpoint greedy front.
//! - [`stats`]: Mann-Whitney U test and run summaries.
//! - [`bench`]: experiment configuration, parallel execution and CSV output.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example <name>`.

pub mod archive;
pub mod bench;
pub mod bits;
pub mod engine;
mod error;
pub mod graph;
pub mod oracles;
pub mod problems;
pub mod stats;

pub use archive::{Individual, Objective3, ParetoArchive};
pub use bits::BitSolution;
pub use error::{Error, Result};
pub use graph::{DominationState, Graph};
pub use problems::{ConfidenceLevel, ProblemInstance, ProblemKind, StochasticWeights};

/// The generator used throughout the crate: ChaCha with 8 rounds.
///
/// Seeded through `SeedableRng::seed_from_u64`; its output stream is
/// specified independently of platform and word size.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Creates the crate generator for `seed` on the given stream.
///
/// Stream 0 is used for instance generation, higher streams for the
/// algorithms, so that a single seed yields independent sequences.
pub fn seeded_rng(seed: u64, stream: u64) -> Rng {
    use rand::SeedableRng;
    let mut rng = Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
