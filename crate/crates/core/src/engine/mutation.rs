use rand::Rng as _;
use rand::RngCore;

use crate::bits::BitSolution;

/// Standard bit mutation with rate `1/n`, repeated until at least one bit
/// flips. Writes the flipped positions, ascending, into `flips`.
///
/// Positions are generated by geometric skipping, which is distributed
/// exactly like `n` independent coin flips but costs `O(1 + flips)`.
pub fn sample_flips<R: RngCore + ?Sized>(n: usize, rng: &mut R, flips: &mut Vec<usize>) {
    assert!(n >= 1, "mutation needs at least one bit");
    flips.clear();
    if n == 1 {
        flips.push(0);
        return;
    }
    let log_keep = (-1.0 / n as f64).ln_1p();
    while flips.is_empty() {
        let mut pos = 0usize;
        loop {
            // 1 - u lies in (0, 1], so the skip is finite and non-negative
            let u: f64 = rng.random();
            let skip = ((1.0 - u).ln() / log_keep).floor();
            if skip >= (n - pos) as f64 {
                break;
            }
            pos += skip as usize;
            flips.push(pos);
            pos += 1;
            if pos >= n {
                break;
            }
        }
    }
}

/// Returns an offspring of `x` that differs from it in at least one bit.
pub fn mutate_plus<R: RngCore + ?Sized>(x: &BitSolution, rng: &mut R) -> BitSolution {
    let mut flips = Vec::new();
    sample_flips(x.len(), rng, &mut flips);
    let mut y = x.clone();
    for &i in &flips {
        y.flip(i);
    }
    y
}
