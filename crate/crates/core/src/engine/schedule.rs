//! The sliding window over constraint values.

use rand::RngCore;

use crate::archive::{ParetoArchive, Selected};
use crate::error::{Error, Result};

/// Parameters of the sliding-window schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlidingParams {
    /// Fraction of the budget spent sweeping the window from `0` to `B`.
    pub t_frac: f64,
    /// Half-width added on both sides of the window.
    pub std: u32,
    /// Schedule exponent; `a < 1` spends more time on larger constraint values.
    pub a: f64,
    /// Margin below `B` at which the sweep counts as finished.
    pub epsilon: u32,
    /// Track the largest constraint value seen and protect it from pruning.
    pub c_max_tracking: bool,
}

impl SlidingParams {
    /// The plain schedule: `t_frac = 1`, `std = 0`, `a = 1`, no `c_max`.
    pub const PLAIN: Self = Self {
        t_frac: 1.0,
        std: 0,
        a: 1.0,
        epsilon: 0,
        c_max_tracking: false,
    };

    /// Settings used for the dominating-set experiments:
    /// `t_frac = 0.9`, `std = 10`, `a = 0.5`, `epsilon = 0`, with `c_max`.
    pub const FAST: Self = Self {
        t_frac: 0.9,
        std: 10,
        a: 0.5,
        epsilon: 0,
        c_max_tracking: true,
    };

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.t_frac) {
            return Err(Error::Config(format!(
                "t_frac must lie in [0, 1], got {}",
                self.t_frac
            )));
        }
        if !(self.a > 0.0 && self.a <= 1.0) {
            return Err(Error::Config(format!(
                "a must lie in (0, 1], got {}",
                self.a
            )));
        }
        Ok(())
    }
}

impl Default for SlidingParams {
    fn default() -> Self {
        Self::FAST
    }
}

/// Inclusive window `[lo, hi]` of constraint values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: u32,
    pub hi: u32,
}

/// Window at step `t` of `t_max`.
///
/// While `t <= t_frac * t_max` the centre is
/// `c_hat = (t^a / (t_frac * t_max)^a) * B` and the window is
/// `[floor(c_hat) - std, ceil(c_hat) + std]`; afterwards it is `[B - std, B]`.
/// Bounds are clamped to `[0, B]`.
pub fn sliding_window(t: u64, t_max: u64, bound: u32, params: &SlidingParams) -> Window {
    let t = t as f64;
    let horizon = params.t_frac * t_max as f64;
    let std = i64::from(params.std);
    let b = i64::from(bound);
    let (lo, hi) = if t <= horizon {
        let c_hat = (t.powf(params.a) / horizon.powf(params.a)) * bound as f64;
        (c_hat.floor() as i64 - std, c_hat.ceil() as i64 + std)
    } else {
        (b - std, b)
    };
    Window {
        lo: lo.clamp(0, b) as u32,
        hi: hi.clamp(0, b) as u32,
    }
}

/// One sliding-window selection. If `c_max` is set, members below the
/// window are pruned except those at `c_max`; then a parent is drawn
/// uniformly from the window, or from the whole archive if the window is
/// empty.
pub fn sliding_selection<'a, R: RngCore + ?Sized>(
    archive: &'a mut ParetoArchive,
    t: u64,
    t_max: u64,
    bound: u32,
    params: &SlidingParams,
    c_max: Option<u32>,
    rng: &mut R,
) -> Result<(Window, Selected<'a>)> {
    let window = sliding_window(t, t_max, bound, params);
    archive.prune_below(window.lo, c_max);
    let selected = archive.select_window(window.lo, window.hi, rng)?;
    Ok((window, selected))
}
