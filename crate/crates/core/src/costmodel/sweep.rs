use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{memory, CostModelParams, Scheme};
use crate::error::{param, Error, Result};

pub const CSV_HEADER: &str = "network_size,scheme,effective_neurons,bits_total,bits_per_neuron";

/// Shape of the canonical tree-mode network whose fan-in feeds every model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Workload {
    /// Neurons per population.
    pub n: u32,
    pub b: u32,
}

impl Default for Workload {
    fn default() -> Self {
        Workload { n: 256, b: 4 }
    }
}

/// Mean per-neuron fan-in of the canonical tree-mode network with `cores`
/// populations of `n` neurons.
///
/// Counts, for every core, how many other cores sit at each router level
/// inside the first `cores` slots; no graph is materialized.
pub fn canonical_mean_fan_in(n: u32, b: u32, cores: u64) -> f64 {
    if cores == 0 {
        return 0.0;
    }
    let b = b as u64;
    let mut total = 0u64;
    for slot in 0..cores {
        let mut fan_in = n as u64 - 1;
        let mut inner = 1u64;
        let mut span = 1u64;
        let mut level = 0;
        while inner < cores {
            level += 1;
            span = span.saturating_mul(b);
            let lo = slot / span * span;
            let reach = (lo.saturating_add(span)).min(cores) - lo;
            let share = if level >= 32 { 0 } else { (n >> level) as u64 };
            fan_in += (reach - inner) * share;
            inner = reach;
        }
        total += fan_in;
    }
    total as f64 / cores as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub network_size: u64,
    pub scheme: Scheme,
    pub effective_neurons: u64,
    pub bits_total: u64,
    pub bits_per_neuron: f64,
    /// Workload fan-in the fixed schemes were evaluated at.
    #[serde(skip)]
    pub mean_fan_in: f64,
}

/// Evaluates every model at every size, rows ordered by size then by `cfgs` order.
pub fn sweep(sizes: &[u64], workload: &Workload, cfgs: &[CostModelParams]) -> Result<Vec<SweepRow>> {
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(param("sweep sizes must be ascending"));
    }
    if workload.n < 2 || workload.b < 2 {
        return Err(param("workload needs n >= 2 and b >= 2"));
    }
    let mut rows = Vec::with_capacity(sizes.len() * cfgs.len());
    for &size in sizes {
        let cores = size.div_ceil(workload.n as u64);
        let fan_in = canonical_mean_fan_in(workload.n, workload.b, cores);
        for cfg in cfgs {
            let r = memory(size, fan_in, cfg)?;
            rows.push(SweepRow {
                network_size: size,
                scheme: r.scheme,
                effective_neurons: r.effective_neurons,
                bits_total: r.bits_total,
                bits_per_neuron: r.bits_per_neuron,
                mean_fan_in: fan_in,
            });
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Structural(format!("write failed: {e}"));
    writeln!(out, "{CSV_HEADER}").map_err(io)?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.network_size, r.scheme, r.effective_neurons, r.bits_total, r.bits_per_neuron
        )
        .map_err(io)?;
    }
    Ok(())
}
