//! The Pareto population.
//!
//! Members are grouped by constraint value `c`. Inside a bucket they form a
//! strict two-dimensional front: sorted by `mu` ascending, `var` strictly
//! descending. That layout answers both questions an insertion asks with a
//! binary search per bucket:
//!
//! - is the newcomer strictly dominated? Only buckets with `c >= c(y)` can
//!   hold a dominator, and within one bucket the best candidate is the
//!   member with the largest `mu <= mu(y)`;
//! - which members does it weakly dominate? In every bucket with
//!   `c <= c(y)` they form one contiguous run starting at the first
//!   `mu >= mu(y)`.

use std::collections::BTreeMap;
use std::io::Write;

use rand::Rng as _;
use rand::RngCore;

use crate::bits::BitSolution;
use crate::error::{Error, Result};

/// `(mu, var, c)`: expected weight and variance are minimized, the
/// constraint value is maximized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Objective3 {
    pub mu: f64,
    pub var: f64,
    pub c: u32,
}

impl Objective3 {
    pub fn new(mu: f64, var: f64, c: u32) -> Self {
        Self { mu, var, c }
    }
}

/// `a` weakly dominates `b`: at least as good in all three objectives.
#[inline]
pub fn dominates_weak_3d(a: &Objective3, b: &Objective3) -> bool {
    a.c >= b.c && a.mu <= b.mu && a.var <= b.var
}

/// `a` weakly dominates `b` and the two objective vectors differ.
#[inline]
pub fn dominates_strict_3d(a: &Objective3, b: &Objective3) -> bool {
    dominates_weak_3d(a, b) && a != b
}

/// A search point with its cached objective vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub x: BitSolution,
    pub obj: Objective3,
}

impl Individual {
    pub fn new(x: BitSolution, obj: Objective3) -> Self {
        Self { x, obj }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// The newcomer was added; `evicted` members it weakly dominated were removed.
    Accepted {
        evicted: usize,
    },
    Rejected,
}

impl Insertion {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Insertion::Accepted { .. })
    }
}

/// A parent drawn by [`ParetoArchive::select_window`].
#[derive(Clone, Copy, Debug)]
pub struct Selected<'a> {
    pub member: &'a Individual,
    /// Size of the pool the member was drawn from.
    pub pool: usize,
    /// True when the window was empty and the whole archive was used.
    pub fallback: bool,
}

/// Mutually non-dominating population indexed by constraint value.
#[derive(Clone, Debug, Default)]
pub struct ParetoArchive {
    buckets: BTreeMap<u32, Vec<Individual>>,
    len: usize,
    max_size_by_c: BTreeMap<u32, usize>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Members in ascending `c`, then ascending `mu`.
    pub fn iter(&self) -> impl Iterator<Item = &Individual> + '_ {
        self.buckets.values().flatten()
    }

    /// Members with constraint value `c`, sorted by `mu`.
    pub fn bucket(&self, c: u32) -> &[Individual] {
        self.buckets.get(&c).map_or(&[], Vec::as_slice)
    }

    /// Occupied constraint values in ascending order.
    pub fn c_values(&self) -> impl Iterator<Item = u32> + '_ {
        self.buckets.keys().copied()
    }

    pub fn max_c(&self) -> Option<u32> {
        self.buckets.keys().next_back().copied()
    }

    /// Largest bucket size seen so far for each constraint value.
    pub fn max_size_by_c(&self) -> &BTreeMap<u32, usize> {
        &self.max_size_by_c
    }

    /// True if some member strictly dominates `y`.
    pub fn is_strictly_dominated(&self, y: &Objective3) -> bool {
        self.buckets.range(y.c..).any(|(&c, bucket)| {
            let i = bucket.partition_point(|m| m.obj.mu <= y.mu);
            if i == 0 {
                return false;
            }
            let w = &bucket[i - 1].obj;
            w.var <= y.var && !(c == y.c && w.mu == y.mu && w.var == y.var)
        })
    }

    /// Accepts `y` unless a member strictly dominates it; on acceptance
    /// every member weakly dominated by `y` (including an identical vector)
    /// is removed first.
    pub fn try_insert(&mut self, y: Individual) -> Insertion {
        if self.is_strictly_dominated(&y.obj) {
            return Insertion::Rejected;
        }
        let obj = y.obj;
        let mut evicted = 0;
        let mut emptied = Vec::new();
        for (&c, bucket) in self.buckets.range_mut(..=obj.c) {
            let start = bucket.partition_point(|m| m.obj.mu < obj.mu);
            let run = bucket[start..].partition_point(|m| m.obj.var >= obj.var);
            if run > 0 {
                bucket.drain(start..start + run);
                evicted += run;
                if bucket.is_empty() {
                    emptied.push(c);
                }
            }
        }
        for c in emptied {
            self.buckets.remove(&c);
        }

        let bucket = self.buckets.entry(obj.c).or_default();
        let pos = bucket.partition_point(|m| m.obj.mu < obj.mu);
        bucket.insert(pos, y);
        let size = bucket.len();
        let best = self.max_size_by_c.entry(obj.c).or_default();
        *best = (*best).max(size);
        self.len = self.len + 1 - evicted;
        Insertion::Accepted { evicted }
    }

    /// Number of members with `lo <= c <= hi`.
    pub fn count_in(&self, lo: u32, hi: u32) -> usize {
        if lo > hi {
            return 0;
        }
        self.buckets.range(lo..=hi).map(|(_, b)| b.len()).sum()
    }

    /// Uniform draw among members with `lo <= c <= hi`, or among all
    /// members if that window is empty.
    pub fn select_window<R: RngCore + ?Sized>(
        &self,
        lo: u32,
        hi: u32,
        rng: &mut R,
    ) -> Result<Selected<'_>> {
        if self.is_empty() {
            return Err(Error::EmptyArchive);
        }
        let pool = self.count_in(lo, hi);
        if pool == 0 {
            let member = self.nth(rng.random_range(0..self.len), 0..=u32::MAX);
            return Ok(Selected {
                member,
                pool: self.len,
                fallback: true,
            });
        }
        let member = self.nth(rng.random_range(0..pool), lo..=hi);
        Ok(Selected {
            member,
            pool,
            fallback: false,
        })
    }

    /// Uniform draw over the whole archive.
    pub fn select_uniform<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<&Individual> {
        if self.is_empty() {
            return Err(Error::EmptyArchive);
        }
        Ok(self.nth(rng.random_range(0..self.len), 0..=u32::MAX))
    }

    /// A member of minimum `mu`; ties broken uniformly at random.
    pub fn argmin_mu<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<&Individual> {
        // bucket heads hold each bucket's minimum mu, and mu is unique per bucket
        let min = self
            .buckets
            .values()
            .map(|b| b[0].obj.mu)
            .min_by(f64::total_cmp)
            .ok_or(Error::EmptyArchive)?;
        let ties: Vec<&Individual> = self
            .buckets
            .values()
            .map(|b| &b[0])
            .filter(|m| m.obj.mu == min)
            .collect();
        Ok(pick(&ties, rng))
    }

    /// A member of maximum `c`; ties broken uniformly at random.
    pub fn argmax_c<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<&Individual> {
        let (_, bucket) = self.buckets.iter().next_back().ok_or(Error::EmptyArchive)?;
        Ok(&bucket[rng.random_range(0..bucket.len())])
    }

    /// Removes members with `c < lo` and `c != keep_c`, in ascending order
    /// of `c` then `mu`. Does nothing when `keep_c` is `None`, and never
    /// removes the last remaining member.
    pub fn prune_below(&mut self, lo: u32, keep_c: Option<u32>) -> usize {
        let Some(keep) = keep_c else {
            return 0;
        };
        let doomed: Vec<u32> = self
            .buckets
            .range(..lo)
            .map(|(&c, _)| c)
            .filter(|&c| c != keep)
            .collect();
        let mut removed = 0;
        for c in doomed {
            let bucket = self.buckets.get_mut(&c).expect("bucket listed above");
            let take = bucket.len().min(self.len - 1);
            bucket.drain(..take);
            self.len -= take;
            removed += take;
            if bucket.is_empty() {
                self.buckets.remove(&c);
            }
            if self.len == 1 {
                break;
            }
        }
        removed
    }

    /// Checks every structural invariant; returns a description of the
    /// first violation found. Costs `O(|P|^2)`.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let mut count = 0;
        for (&c, bucket) in &self.buckets {
            if bucket.is_empty() {
                return Err(format!("empty bucket stored for c = {c}"));
            }
            if bucket.iter().any(|m| m.obj.c != c) {
                return Err(format!("member filed under wrong bucket c = {c}"));
            }
            for pair in bucket.windows(2) {
                let (a, b) = (&pair[0].obj, &pair[1].obj);
                if !(a.mu < b.mu && a.var > b.var) {
                    return Err(format!(
                        "bucket c = {c} is not a strict front: {a:?} then {b:?}"
                    ));
                }
            }
            let best = self.max_size_by_c.get(&c).copied().unwrap_or(0);
            if best < bucket.len() {
                return Err(format!(
                    "max size {best} below current size {} at c = {c}",
                    bucket.len()
                ));
            }
            count += bucket.len();
        }
        if count != self.len {
            return Err(format!("len {} but {count} members stored", self.len));
        }
        let all: Vec<&Objective3> = self.iter().map(|m| &m.obj).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                if i != j && dominates_weak_3d(a, b) {
                    return Err(format!("{a:?} dominates {b:?}"));
                }
            }
        }
        Ok(())
    }

    /// Writes `c,mu,var,bits` rows, bits rendered by [`BitSolution::to_hex`].
    pub fn write_snapshot_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["c", "mu", "var", "bits"])?;
        for m in self.iter() {
            w.write_record([
                m.obj.c.to_string(),
                m.obj.mu.to_string(),
                m.obj.var.to_string(),
                m.x.to_hex(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    fn nth(&self, mut index: usize, range: std::ops::RangeInclusive<u32>) -> &Individual {
        for (_, bucket) in self.buckets.range(range) {
            if index < bucket.len() {
                return &bucket[index];
            }
            index -= bucket.len();
        }
        unreachable!("index beyond the selection pool")
    }
}

fn pick<'a, T, R: RngCore + ?Sized>(items: &[&'a T], rng: &mut R) -> &'a T {
    if items.len() == 1 {
        items[0]
    } else {
        items[rng.random_range(0..items.len())]
    }
}
