//! Clique-based placement onto a hierarchical router tree.
//!
//! The pipeline: cover the network with cliques of at most `n` neurons (one
//! per core), count inter-core connections, derive placement distances,
//! assign physical slots, route connections nearest-first under the fan-in
//! allowances, and optionally repair flagged connections with relay cores.

mod connect;
mod cover;
mod distance;
mod repair;
mod slots;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hwmodel::{level_from_dist, HardwareConfig};
use crate::netgraph::Network;
use crate::placement::Placement;

pub use connect::place_connections;
pub use cover::{clique_cover, CliqueCover};
pub use distance::{
    connection_counts, connection_counts_with, distance_matrix, sorted_pairs, CoreMatrix, CountMode,
    DistanceMatrix,
};
pub use repair::{second_pass, SparePolicy};
pub use slots::assign_slots;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PlaceOptions {
    pub spare_policy: SparePolicy,
    /// Connection counting used for slot assignment and distances.
    pub count_mode: CountMode,
}

/// Outcome of a full placement run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementReport {
    pub cores_used: usize,
    pub flagged: usize,
    /// Highest router level any routed connection uses.
    pub max_level: Option<u32>,
    /// Highest router level implied by the placement distances.
    pub required_level: Option<u32>,
    pub placement: Placement,
}

impl PlacementReport {
    pub fn summary(&self) -> String {
        let level = self.max_level.map_or_else(|| "none".to_string(), |l| l.to_string());
        format!("cores_used={} flagged={} max_level={}", self.cores_used, self.flagged, level)
    }
}

pub fn place(net: &Network, cfg: &HardwareConfig, spare_policy: SparePolicy) -> Result<PlacementReport> {
    place_with(net, cfg, &PlaceOptions { spare_policy, ..PlaceOptions::default() })
}

pub fn place_with(net: &Network, cfg: &HardwareConfig, opts: &PlaceOptions) -> Result<PlacementReport> {
    let cover = clique_cover(net, cfg.n() as usize)?;
    let e = connection_counts_with(net, &cover, opts.count_mode)?;
    let dist = distance_matrix(&e, cfg.n());
    let slots = assign_slots(&e, cfg)?;
    let first = place_connections(net, &cover, &slots, cfg)?;
    let placement = second_pass(&first, net, cfg, opts.spare_policy)?;

    let required_level = dist.rows().flatten().filter_map(|&d| level_from_dist(d).ok().flatten()).max();
    Ok(PlacementReport {
        cores_used: placement.cores_used,
        flagged: placement.flagged_count(),
        max_level: placement.max_level(),
        required_level,
        placement,
    })
}
