//! Hierarchical router-tree hardware model.
//!
//! Cores sit at the leaves of a complete `b`-ary tree of depth `L`. Two cores
//! are at distance `l` when their lowest common router is at level `l`; a
//! core receives at most `n >> l` distinct source neurons from any one
//! source core at distance `l`. Level 0 is intra-core broadcast.

mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

pub use validate::{validate_placement, ValidationReport, Violation};

/// Physical position of a core among the `b^L` leaves of the router tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlotId(pub u32);

impl fmt::Display for SlotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Core size, router branching factor and router depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct HardwareConfig {
    n: u32,
    b: u32,
    levels: u32,
    total_slots: u32,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    n: u32,
    b: u32,
    #[serde(rename = "L")]
    levels: u32,
}

impl TryFrom<RawConfig> for HardwareConfig {
    type Error = crate::Error;
    fn try_from(raw: RawConfig) -> Result<Self> {
        HardwareConfig::new(raw.n, raw.b, raw.levels)
    }
}

impl From<HardwareConfig> for RawConfig {
    fn from(cfg: HardwareConfig) -> Self {
        RawConfig { n: cfg.n, b: cfg.b, levels: cfg.levels }
    }
}

impl HardwareConfig {
    pub fn new(n: u32, b: u32, levels: u32) -> Result<Self> {
        if n < 2 {
            return Err(param(format!("neurons per core must be at least 2, got {n}")));
        }
        if b < 2 {
            return Err(param(format!("branching factor must be at least 2, got {b}")));
        }
        if levels < 1 {
            return Err(param("at least one router level is required"));
        }
        let total_slots =
            b.checked_pow(levels).ok_or_else(|| param(format!("{b}^{levels} slots overflow 32 bits")))?;
        Ok(HardwareConfig { n, b, levels, total_slots })
    }

    /// Smallest tree (at least one level) with room for `cores` cores.
    pub fn fitting(n: u32, b: u32, cores: usize) -> Result<Self> {
        let mut levels = 1;
        loop {
            let cfg = HardwareConfig::new(n, b, levels)?;
            if cfg.total_slots as usize >= cores {
                return Ok(cfg);
            }
            levels += 1;
        }
    }

    /// Neurons per core.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Children per router.
    pub fn b(&self) -> u32 {
        self.b
    }

    /// Router levels above R0.
    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn total_slots(&self) -> u32 {
        self.total_slots
    }

    fn check_slot(&self, s: SlotId) -> Result<()> {
        if s.0 >= self.total_slots {
            return Err(param(format!("slot {s} outside 0..{}", self.total_slots)));
        }
        Ok(())
    }

    /// Number of slots at exactly `level` from any given slot.
    pub fn cores_at_distance(&self, level: u32) -> u64 {
        match level {
            0 => 1,
            l if l > self.levels => 0,
            l => (self.b as u64 - 1) * (self.b as u64).pow(l - 1),
        }
    }
}

/// Level of the lowest router shared by leaves `a` and `b` of a `branching`-ary tree.
pub fn router_level(mut a: u64, mut b: u64, branching: u32) -> u32 {
    let br = branching as u64;
    let mut level = 0;
    while a != b {
        a /= br;
        b /= br;
        level += 1;
    }
    level
}

pub fn tree_distance(a: SlotId, b: SlotId, cfg: &HardwareConfig) -> Result<u32> {
    cfg.check_slot(a)?;
    cfg.check_slot(b)?;
    Ok(router_level(a.0 as u64, b.0 as u64, cfg.b))
}

/// Distinct source neurons a core may receive from one source core at `level`.
///
/// Level 0 is the core itself: every other local neuron.
pub fn fan_in_allowance(level: u32, cfg: &HardwareConfig) -> Result<u32> {
    if level > cfg.levels {
        return Err(param(format!("level {level} above top router level {}", cfg.levels)));
    }
    Ok(allowance_unchecked(level, cfg.n))
}

pub(crate) fn allowance_unchecked(level: u32, n: u32) -> u32 {
    match level {
        0 => n - 1,
        l if l >= 32 => 0,
        l => n >> l,
    }
}

/// Router level implied by a placement distance `floor(n/e) + 1`.
///
/// `-1` (unconnected) has no level, `0` (self) and `1` (denser than a
/// whole core) map to level 0, and `d >= 2` maps to `ceil(log2(d - 1))`.
pub fn level_from_dist(dist: i64) -> Result<Option<u32>> {
    match dist {
        -1 => Ok(None),
        0 | 1 => Ok(Some(0)),
        d if d >= 2 => Ok(Some(ceil_log2((d - 1) as u64))),
        d => Err(param(format!("distance {d} is not a valid placement distance"))),
    }
}

pub(crate) fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

/// Largest per-neuron fan-in the hardware can route with a full slot grid.
pub fn max_fan_in(cfg: &HardwareConfig) -> u64 {
    (cfg.n as u64 - 1)
        + (1..=cfg.levels)
            .map(|l| cfg.cores_at_distance(l) * allowance_unchecked(l, cfg.n) as u64)
            .sum::<u64>()
}
