use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{allowance_unchecked, router_level, HardwareConfig, SlotId};
use crate::error::{structural, Result};
use crate::netgraph::{Edge, Network, NeuronId};
use crate::placement::{CoreId, EdgeStatus, Placement};

/// One broken hardware constraint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Too many distinct source neurons from `source_core` reach `target_core`.
    FanIn { target_core: CoreId, source_core: CoreId, level: u32, allowed: u32, actual: u32 },
    /// A core hosts more neurons (and relay entries) than it has room for.
    Capacity { core: CoreId, hosted: u32, capacity: u32 },
    /// Two cores occupy the same slot.
    SlotConflict { slot: SlotId, cores: Vec<CoreId> },
    /// A routed edge has an endpoint with no core.
    UnplacedEndpoint { src: NeuronId, dst: NeuronId },
    /// A routed hop records a level different from the slots' tree distance.
    LevelMismatch { src: NeuronId, dst: NeuronId, recorded: u32, actual: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Flagged edges plus network edges the placement does not mention.
    pub unplaced_count: usize,
}

/// Checks a placement against the hardware's capacity and fan-in allowances.
///
/// Only routed edges (placed or relayed) count toward allowances. Dangling
/// references are structural errors rather than violations.
pub fn validate_placement(
    placement: &Placement,
    net: &Network,
    cfg: &HardwareConfig,
) -> Result<ValidationReport> {
    for (&neuron, core) in &placement.neuron_core {
        if !net.contains(neuron) {
            return Err(structural(format!("placement maps unknown neuron {neuron}")));
        }
        if !placement.core_slot.contains_key(core) {
            return Err(structural(format!("core {core} of neuron {neuron} has no slot")));
        }
    }
    for (core, slot) in &placement.core_slot {
        if slot.0 >= cfg.total_slots() {
            return Err(structural(format!("core {core} at slot {slot} outside 0..{}", cfg.total_slots())));
        }
    }
    let mut relay_sources: HashMap<CoreId, HashSet<NeuronId>> = HashMap::new();
    for relay in &placement.relays {
        if !placement.core_slot.contains_key(&relay.core) {
            return Err(structural(format!("relay core {} has no slot", relay.core)));
        }
        let set = relay_sources.entry(relay.core).or_default();
        for &s in &relay.sources {
            if !net.contains(s) {
                return Err(structural(format!("relay core {} forwards unknown neuron {s}", relay.core)));
            }
            set.insert(s);
        }
    }

    let mut violations = Vec::new();

    // capacity
    let mut hosted: BTreeMap<CoreId, u32> = BTreeMap::new();
    for core in placement.neuron_core.values() {
        *hosted.entry(*core).or_default() += 1;
    }
    for (core, sources) in &relay_sources {
        *hosted.entry(*core).or_default() += sources.len() as u32;
    }
    for (&core, &count) in &hosted {
        if count > cfg.n() {
            violations.push(Violation::Capacity { core, hosted: count, capacity: cfg.n() });
        }
    }

    // slot injectivity
    let mut by_slot: BTreeMap<SlotId, Vec<CoreId>> = BTreeMap::new();
    for (&core, &slot) in &placement.core_slot {
        by_slot.entry(slot).or_default().push(core);
    }
    for (slot, cores) in by_slot {
        if cores.len() > 1 {
            violations.push(Violation::SlotConflict { slot, cores });
        }
    }

    let level_between = |a: CoreId, b: CoreId| {
        router_level(placement.core_slot[&a].0 as u64, placement.core_slot[&b].0 as u64, cfg.b())
    };

    // (target core, source core, sender) for every routed inter-core hop
    let mut hops: Vec<(CoreId, CoreId, NeuronId)> = Vec::new();
    let mut seen: HashSet<Edge> = HashSet::with_capacity(placement.edges.len());
    let mut unplaced = 0usize;
    for rec in &placement.edges {
        let edge = (rec.src, rec.dst);
        if !net.contains_edge(edge) {
            return Err(structural(format!("placement lists unknown edge ({}, {})", rec.src, rec.dst)));
        }
        if !seen.insert(edge) {
            return Err(structural(format!("edge ({}, {}) listed twice", rec.src, rec.dst)));
        }
        let (recorded, relay) = match rec.status {
            EdgeStatus::Flagged => {
                unplaced += 1;
                continue;
            }
            EdgeStatus::Placed { level } => (level, None),
            EdgeStatus::Relayed { relay_core, level } => (level, Some(relay_core)),
        };
        let (Some(&src_core), Some(&dst_core)) =
            (placement.neuron_core.get(&rec.src), placement.neuron_core.get(&rec.dst))
        else {
            violations.push(Violation::UnplacedEndpoint { src: rec.src, dst: rec.dst });
            continue;
        };
        let last_hop_source = match relay {
            None => src_core,
            Some(r) => {
                if !relay_sources.get(&r).is_some_and(|s| s.contains(&rec.src)) {
                    return Err(structural(format!(
                        "edge ({}, {}) relayed through core {r} which does not forward {}",
                        rec.src, rec.dst, rec.src
                    )));
                }
                r
            }
        };
        let actual = level_between(last_hop_source, dst_core);
        if actual != recorded {
            violations.push(Violation::LevelMismatch { src: rec.src, dst: rec.dst, recorded, actual });
        }
        if last_hop_source != dst_core {
            hops.push((dst_core, last_hop_source, rec.src));
        }
    }
    unplaced += net.num_edges() - seen.len();

    // source neuron -> relay core
    for relay in &placement.relays {
        for &s in &relay.sources {
            match placement.neuron_core.get(&s) {
                Some(&home) if home != relay.core => hops.push((relay.core, home, s)),
                Some(_) => {}
                None => violations.push(Violation::UnplacedEndpoint { src: s, dst: s }),
            }
        }
    }

    hops.sort_unstable();
    hops.dedup();
    let mut i = 0;
    while i < hops.len() {
        let (target, source, _) = hops[i];
        let mut j = i;
        while j < hops.len() && hops[j].0 == target && hops[j].1 == source {
            j += 1;
        }
        let actual = (j - i) as u32;
        let level = level_between(target, source);
        let allowed = if level > cfg.levels() { 0 } else { allowance_unchecked(level, cfg.n()) };
        if level > 0 && actual > allowed {
            violations.push(Violation::FanIn {
                target_core: target,
                source_core: source,
                level,
                allowed,
                actual,
            });
        }
        i = j;
    }

    violations.sort();
    Ok(ValidationReport { ok: violations.is_empty(), violations, unplaced_count: unplaced })
}
