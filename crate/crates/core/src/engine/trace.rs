use std::io::Write;

use serde::Serialize;

use super::{Observer, Phase, Step};

/// One line of the optional trace log.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub t: u64,
    pub phase: &'static str,
    pub lo: Option<u32>,
    pub hi: Option<u32>,
    pub archive_size: usize,
    pub c_max: Option<u32>,
    pub mu_min: f64,
    pub accepted: bool,
}

impl TraceRecord {
    pub fn from_step(step: &Step<'_>) -> Self {
        let (phase, window) = match step.phase {
            Phase::MinMu => ("min_mu", None),
            Phase::MaxC => ("max_c", None),
            Phase::Window(w) => ("window", Some(w)),
            Phase::Uniform => ("uniform", None),
        };
        Self {
            t: step.t,
            phase,
            lo: window.map(|w| w.lo),
            hi: window.map(|w| w.hi),
            archive_size: step.archive.len(),
            c_max: step.c_max,
            mu_min: step.mu_min,
            accepted: step.accepted,
        }
    }
}

/// Writes one JSON object per offspring. The first write error stops
/// logging and is reported by [`finish`](Self::finish).
pub struct TraceWriter<W: Write> {
    out: W,
    every: u64,
    error: Option<std::io::Error>,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(out: W) -> Self {
        Self::every(out, 1)
    }

    /// Logs only iterations divisible by `every`.
    pub fn every(out: W, every: u64) -> Self {
        Self {
            out,
            every: every.max(1),
            error: None,
        }
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        if let Some(e) = self.error {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> Observer for TraceWriter<W> {
    fn on_step(&mut self, step: &Step<'_>) {
        if self.error.is_some() || !step.t.is_multiple_of(self.every) {
            return;
        }
        let record = TraceRecord::from_step(step);
        let res = serde_json::to_writer(&mut self.out, &record)
            .map_err(std::io::Error::from)
            .and_then(|_| self.out.write_all(b"\n"));
        if let Err(e) = res {
            self.error = Some(e);
        }
    }
}
