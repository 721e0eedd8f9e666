//! Instance serialization: a JSON header plus a `node,mu,var` CSV body.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::StochasticWeights;
use crate::error::Result;

/// Describes how an instance was produced so it can be rebuilt from a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceHeader {
    /// `"domset"` or `"uniform"`.
    pub kind: String,
    pub seed: Option<u64>,
    pub graph_file: Option<String>,
    #[serde(rename = "B")]
    pub bound: u32,
    pub n: usize,
}

impl InstanceHeader {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct WeightRow {
    node: usize,
    mu: f64,
    var: f64,
}

/// Writes one `node,mu,var` row per item. Floats use the shortest
/// round-tripping representation, so reading back is lossless.
pub fn write_weights_csv<W: Write>(weights: &StochasticWeights, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (node, (&mu, &var)) in weights.mu().iter().zip(weights.var()).enumerate() {
        w.serialize(WeightRow { node, mu, var })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_weights_csv<R: Read>(input: R) -> Result<StochasticWeights> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows: Vec<WeightRow> = r.deserialize().collect::<Result<_, _>>()?;
    rows.sort_by_key(|row| row.node);
    let (mu, var) = rows.into_iter().map(|row| (row.mu, row.var)).unzip();
    StochasticWeights::new(mu, var)
}
