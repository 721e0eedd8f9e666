//! Undirected graphs and domination counting.
//!
//! A node `v` is dominated by a selection `x` if it is selected itself or has
//! a selected neighbor. The number of dominated nodes is the constraint value
//! of the dominating-set model.

use std::io::BufRead;

use crate::bits::BitSolution;
use crate::error::{Error, Result};

/// Simple undirected graph in compressed adjacency form.
///
/// Neighbor lists are sorted, symmetric, free of self-loops and duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph on `n` nodes from an arbitrary edge list.
    ///
    /// Edges are symmetrized and deduplicated; self-loops are dropped.
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                pairs.push((u as u32, v as u32));
                pairs.push((v as u32, u as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        Self { offsets, targets }
    }

    /// Parses an edge list; see [`load_edge_list`].
    pub fn parse(text: &str) -> Result<Self> {
        load_edge_list(text.as_bytes())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    /// Iterates each undirected edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// True if `v` is selected in `x` or adjacent to a selected node.
    #[inline]
    pub fn is_dominated(&self, v: usize, x: &BitSolution) -> bool {
        x.get(v) || self.neighbors(v).iter().any(|&u| x.get(u as usize))
    }

    /// Change in the dominated-node count when going from `parent` to
    /// `child`, where `flips` lists exactly the differing positions.
    ///
    /// Only closed neighborhoods of flipped nodes can change status, so the
    /// cost is bounded by the degree sum over those neighborhoods.
    pub fn domination_delta(
        &self,
        parent: &BitSolution,
        child: &BitSolution,
        flips: &[usize],
        scratch: &mut VisitMarks,
    ) -> i64 {
        scratch.reset(self.n());
        let mut delta = 0i64;
        let mut visit = |v: usize| {
            if scratch.mark(v) {
                delta += self.is_dominated(v, child) as i64 - self.is_dominated(v, parent) as i64;
            }
        };
        for &f in flips {
            visit(f);
            for &u in self.neighbors(f) {
                visit(u as usize);
            }
        }
        delta
    }
}

/// Epoch-stamped visited set, reused across evaluations to avoid clearing.
#[derive(Clone, Debug, Default)]
pub struct VisitMarks {
    stamps: Vec<u32>,
    epoch: u32,
}

impl VisitMarks {
    fn reset(&mut self, n: usize) {
        if self.stamps.len() != n {
            self.stamps = vec![0; n];
            self.epoch = 0;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamps.fill(0);
            self.epoch = 1;
        }
    }

    /// Returns true the first time `v` is marked in the current epoch.
    #[inline]
    fn mark(&mut self, v: usize) -> bool {
        if self.stamps[v] == self.epoch {
            false
        } else {
            self.stamps[v] = self.epoch;
            true
        }
    }
}

/// Reads a whitespace-separated edge list.
///
/// Lines starting with `%` or `#` are comments. If the first comment is a
/// `%%MatrixMarket` banner, the first data line (the size line) is skipped.
/// Columns after the second are ignored. Node ids are 0-based unless the
/// smallest id is 1, in which case everything is shifted down by one.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    let mut matrix_market = false;
    let mut size_line_pending = false;
    let mut first_line = true;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if first_line {
            first_line = false;
            if trimmed.starts_with("%%MatrixMarket") {
                matrix_market = true;
                size_line_pending = true;
            }
        }
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        if matrix_market && size_line_pending {
            size_line_pending = false;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let u = parse_id(tokens.next(), lineno)?;
        let v = parse_id(tokens.next(), lineno)?;
        raw.push((u, v));
    }

    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let min_id = raw.iter().map(|&(u, v)| u.min(v)).min().unwrap();
    let shift = u64::from(min_id == 1);
    let max_id = raw.iter().map(|&(u, v)| u.max(v)).max().unwrap() - shift;
    let n = usize::try_from(max_id + 1)
        .ok()
        .filter(|&n| n <= u32::MAX as usize)
        .ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("node id {max_id} too large"),
        })?;

    Ok(Graph::from_edges(
        n,
        raw.into_iter()
            .map(|(u, v)| ((u - shift) as usize, (v - shift) as usize)),
    ))
}

fn parse_id(token: Option<&str>, line: usize) -> Result<u64> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        msg: "expected two node ids".into(),
    })?;
    let value: i64 = token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("malformed node id {token:?}"),
    })?;
    if value < 0 {
        return Err(Error::Parse {
            line,
            msg: format!("negative node id {value}"),
        });
    }
    Ok(value as u64)
}

/// Number of nodes dominated by the selection `x`. Recomputed from scratch.
pub fn count_dominated(g: &Graph, x: &BitSolution) -> Result<usize> {
    check_len(g, x)?;
    Ok((0..g.n()).filter(|&v| g.is_dominated(v, x)).count())
}

fn check_len(g: &Graph, x: &BitSolution) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// Per-node dominator counts for one selection, updated incrementally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationState {
    cover_count: Vec<u32>,
    dominated_total: usize,
}

impl DominationState {
    /// State of the empty selection.
    pub fn empty(g: &Graph) -> Self {
        Self {
            cover_count: vec![0; g.n()],
            dominated_total: 0,
        }
    }

    pub fn from_selection(g: &Graph, x: &BitSolution) -> Result<Self> {
        check_len(g, x)?;
        let mut state = Self::empty(g);
        for u in x.iter_ones() {
            state.add(g, u);
        }
        Ok(state)
    }

    pub fn dominated_total(&self) -> usize {
        self.dominated_total
    }

    pub fn cover_count(&self) -> &[u32] {
        &self.cover_count
    }

    /// Applies the bit flips that turned the previous selection into `new_x`.
    ///
    /// `flipped` must list exactly the changed positions; the direction of
    /// each flip is read from `new_x`.
    pub fn flip_update(&mut self, g: &Graph, flipped: &[usize], new_x: &BitSolution) -> Result<()> {
        check_len(g, new_x)?;
        for &u in flipped {
            if u >= g.n() {
                return Err(Error::Domain(format!("flip index {u} out of range")));
            }
            if new_x.get(u) {
                self.add(g, u);
            } else {
                self.remove(g, u);
            }
        }
        Ok(())
    }

    fn add(&mut self, g: &Graph, u: usize) {
        for v in std::iter::once(u as u32).chain(g.neighbors(u).iter().copied()) {
            let c = &mut self.cover_count[v as usize];
            if *c == 0 {
                self.dominated_total += 1;
            }
            *c += 1;
        }
    }

    fn remove(&mut self, g: &Graph, u: usize) {
        for v in std::iter::once(u as u32).chain(g.neighbors(u).iter().copied()) {
            let c = &mut self.cover_count[v as usize];
            debug_assert!(*c > 0, "removing a node that was not selected");
            *c -= 1;
            if *c == 0 {
                self.dominated_total -= 1;
            }
        }
    }
}
