//! Routing-memory models.
//!
//! Three schemes are compared on the same canonical workload:
//!
//! - `hierarchical`: per level, an enable bit, a source-core address within
//!   the level's reach and a group index selecting the admitted `1/2^l`
//!   share of that core's neurons. Cost depends on tree depth only.
//! - `crossbar_fixed`: every neuron owns a `K`-wide crossbar row plus a
//!   destination address; fan-in above `K` needs relay neurons.
//! - `cam_mixed`: `K` CAM entries per neuron plus a destination address;
//!   multicast destinations share relays, modelled by a divisor on the relay
//!   count.
//!
//! Synaptic weight storage is not counted by any model.

mod relay;
mod sweep;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::hwmodel::ceil_log2;

pub use relay::relay_expansion;
pub use sweep::{canonical_mean_fan_in, sweep, write_sweep_csv, SweepRow, Workload, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Hierarchical,
    CrossbarFixed,
    CamMixed,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Hierarchical, Scheme::CrossbarFixed, Scheme::CamMixed];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Hierarchical => "hierarchical",
            Scheme::CrossbarFixed => "crossbar_fixed",
            Scheme::CamMixed => "cam_mixed",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sch| sch.name() == s)
            .ok_or_else(|| param(format!("unknown scheme {s:?}")))
    }
}

/// Parameters of one memory model. Unused fields are ignored by other schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModelParams {
    pub scheme: Scheme,
    /// Neurons per core.
    pub n: u32,
    /// Router branching factor (hierarchical).
    pub b: u32,
    /// Fixed router depth; derived from the network size when absent (hierarchical).
    #[serde(default)]
    pub levels: Option<u32>,
    /// Per-neuron fan-in limit `K` (fixed schemes).
    pub fan_in_limit: u32,
    pub bits_per_cam_entry: u32,
    /// Destination address bits per neuron (fixed schemes).
    pub dest_bits: u32,
    /// Inputs merged by one relay neuron.
    pub relay_arity: u32,
    /// Relay count divisor for multicast reuse (cam_mixed).
    pub relay_mitigation: u32,
}

impl CostModelParams {
    pub fn hierarchical(n: u32, b: u32) -> Self {
        CostModelParams {
            scheme: Scheme::Hierarchical,
            n,
            b,
            levels: None,
            fan_in_limit: 1,
            bits_per_cam_entry: 1,
            dest_bits: 1,
            relay_arity: 2,
            relay_mitigation: 1,
        }
    }

    /// 256-input crossbar rows and 32-bit destinations.
    pub fn crossbar_default() -> Self {
        CostModelParams {
            scheme: Scheme::CrossbarFixed,
            n: 256,
            b: 4,
            levels: None,
            fan_in_limit: 256,
            bits_per_cam_entry: 1,
            dest_bits: 32,
            relay_arity: 256,
            relay_mitigation: 1,
        }
    }

    /// 64 CAM entries of 16 bits, 32-bit destinations, relay divisor 72.
    pub fn cam_default() -> Self {
        CostModelParams {
            scheme: Scheme::CamMixed,
            n: 256,
            b: 4,
            levels: None,
            fan_in_limit: 64,
            bits_per_cam_entry: 16,
            dest_bits: 32,
            relay_arity: 64,
            relay_mitigation: 72,
        }
    }

    pub fn default_for(scheme: Scheme) -> Self {
        match scheme {
            Scheme::Hierarchical => CostModelParams::hierarchical(256, 4),
            Scheme::CrossbarFixed => CostModelParams::crossbar_default(),
            Scheme::CamMixed => CostModelParams::cam_default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("n", self.n),
            ("b", self.b),
            ("fan_in_limit", self.fan_in_limit),
            ("bits_per_cam_entry", self.bits_per_cam_entry),
            ("dest_bits", self.dest_bits),
            ("relay_arity", self.relay_arity),
            ("relay_mitigation", self.relay_mitigation),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(param(format!("{name} must be positive")));
        }
        if self.scheme == Scheme::Hierarchical && self.b < 2 {
            return Err(param("hierarchical scheme needs branching of at least 2"));
        }
        if self.scheme != Scheme::Hierarchical && self.relay_arity < 2 {
            return Err(param("relay arity must be at least 2"));
        }
        Ok(())
    }

    fn expect(&self, scheme: Scheme) -> Result<()> {
        self.validate()?;
        if self.scheme != scheme {
            return Err(param(format!("expected {scheme} parameters, got {}", self.scheme)));
        }
        Ok(())
    }
}

/// Routing memory of one network under one scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryReport {
    pub scheme: Scheme,
    pub network_size: u64,
    /// Network neurons plus relay neurons.
    pub effective_neurons: u64,
    pub bits_total: u64,
    /// `bits_total / network_size`.
    pub bits_per_neuron: f64,
}

impl MemoryReport {
    fn new(scheme: Scheme, network_size: u64, effective_neurons: u64, bits_each: u64) -> Self {
        let bits_total = effective_neurons * bits_each;
        let bits_per_neuron = if network_size == 0 { 0.0 } else { bits_total as f64 / network_size as f64 };
        MemoryReport { scheme, network_size, effective_neurons, bits_total, bits_per_neuron }
    }

    pub fn megabits(&self) -> f64 {
        self.bits_total as f64 / 1e6
    }
}

/// Router depth needed for `net_size` neurons in cores of `n`: `ceil(log_b(cores))`.
pub fn tree_depth(net_size: u64, n: u32, b: u32) -> u32 {
    let cores = net_size.div_ceil(n as u64);
    let mut depth = 0;
    let mut reach = 1u64;
    while reach < cores {
        reach = reach.saturating_mul(b as u64);
        depth += 1;
    }
    depth
}

/// Routing bits each neuron stores in a hierarchical tree of `levels` levels.
pub fn hierarchical_bits_per_neuron(b: u32, levels: u32) -> u64 {
    (1..=levels)
        .map(|l| {
            let scope = (b as u64 - 1) * (b as u64).pow(l - 1);
            1 + ceil_log2(scope) as u64 + l as u64
        })
        .sum()
}

pub fn memory_hierarchical(net_size: u64, params: &CostModelParams) -> Result<MemoryReport> {
    params.expect(Scheme::Hierarchical)?;
    let levels = params.levels.unwrap_or_else(|| tree_depth(net_size, params.n, params.b));
    let each = hierarchical_bits_per_neuron(params.b, levels);
    Ok(MemoryReport::new(Scheme::Hierarchical, net_size, net_size, each))
}

fn fan_in_count(mean_fan_in: f64) -> Result<u64> {
    if !mean_fan_in.is_finite() || mean_fan_in < 0.0 {
        return Err(param(format!("mean fan-in {mean_fan_in} must be finite and non-negative")));
    }
    Ok(mean_fan_in.ceil() as u64)
}

pub fn memory_crossbar_fixed(
    net_size: u64,
    mean_fan_in: f64,
    params: &CostModelParams,
) -> Result<MemoryReport> {
    params.expect(Scheme::CrossbarFixed)?;
    let relays =
        relay_expansion(fan_in_count(mean_fan_in)?, params.fan_in_limit as u64, params.relay_arity as u64);
    let effective = net_size * (1 + relays);
    let each = params.fan_in_limit as u64 + params.dest_bits as u64;
    Ok(MemoryReport::new(Scheme::CrossbarFixed, net_size, effective, each))
}

pub fn memory_cam_mixed(net_size: u64, mean_fan_in: f64, params: &CostModelParams) -> Result<MemoryReport> {
    params.expect(Scheme::CamMixed)?;
    let relays =
        relay_expansion(fan_in_count(mean_fan_in)?, params.fan_in_limit as u64, params.relay_arity as u64);
    let effective = net_size + (net_size * relays).div_ceil(params.relay_mitigation as u64);
    let each = params.fan_in_limit as u64 * params.bits_per_cam_entry as u64 + params.dest_bits as u64;
    Ok(MemoryReport::new(Scheme::CamMixed, net_size, effective, each))
}

/// Dispatches on `params.scheme`. `mean_fan_in` is ignored by the hierarchical model.
pub fn memory(net_size: u64, mean_fan_in: f64, params: &CostModelParams) -> Result<MemoryReport> {
    match params.scheme {
        Scheme::Hierarchical => memory_hierarchical(net_size, params),
        Scheme::CrossbarFixed => memory_crossbar_fixed(net_size, mean_fan_in, params),
        Scheme::CamMixed => memory_cam_mixed(net_size, mean_fan_in, params),
    }
}
