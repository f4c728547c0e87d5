use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::hwmodel::{allowance_unchecked, router_level, HardwareConfig, SlotId};
use crate::netgraph::{Network, NeuronId};
use crate::placement::{CoreId, EdgeStatus, Placement, RelayCore};

/// What the repair pass may do with flagged synapses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SparePolicy {
    #[default]
    Off,
    /// Allocate relay cores on free slots closer to the target.
    ExtraCores,
}

/// Reroutes flagged synapses through relay cores on unused slots.
///
/// For every (target core, source core) pair with flagged synapses, nearest
/// pairs first, a free slot strictly closer to the target than the source is
/// turned into a relay core forwarding as many excess source neurons as both
/// legs allow. Placed synapses are never touched.
pub fn second_pass(
    placement: &Placement,
    net: &Network,
    cfg: &HardwareConfig,
    policy: SparePolicy,
) -> Result<Placement> {
    let mut out = placement.clone();
    if policy == SparePolicy::Off || placement.flagged_count() == 0 {
        return Ok(out);
    }

    let slot_of = |c: &CoreId| {
        placement.core_slot.get(c).copied().ok_or_else(|| structural(format!("core {c} has no slot")))
    };
    let mut free: BTreeSet<u32> = (0..cfg.total_slots()).collect();
    for s in placement.core_slot.values() {
        free.remove(&s.0);
    }
    let mut next_core = placement.core_slot.keys().map(|c| c.0 + 1).max().unwrap_or(0);

    // flagged sources per (level, target core, source core)
    let mut pending: BTreeMap<(u32, CoreId, CoreId), BTreeSet<NeuronId>> = BTreeMap::new();
    for rec in placement.edges.iter().filter(|r| r.status == EdgeStatus::Flagged) {
        if !net.contains_edge((rec.src, rec.dst)) {
            return Err(structural(format!("flagged edge ({}, {}) not in network", rec.src, rec.dst)));
        }
        let (Some(&cs), Some(&cd)) =
            (placement.neuron_core.get(&rec.src), placement.neuron_core.get(&rec.dst))
        else {
            continue;
        };
        let level = router_level(slot_of(&cs)?.0 as u64, slot_of(&cd)?.0 as u64, cfg.b());
        pending.entry((level, cd, cs)).or_default().insert(rec.src);
    }

    // (target core, source neuron) -> (relay core, relay-to-target level)
    let mut rerouted: BTreeMap<(CoreId, NeuronId), (CoreId, u32)> = BTreeMap::new();
    for ((level, target, _source), excess) in pending {
        let target_slot = slot_of(&target)?.0 as u64;
        let mut excess: Vec<NeuronId> = excess.into_iter().collect();
        while !excess.is_empty() {
            let choice = free
                .iter()
                .map(|&s| (router_level(s as u64, target_slot, cfg.b()), s))
                .filter(|&(d, _)| d < level)
                .min();
            let Some((near, slot)) = choice else { break };
            // the source-to-relay leg crosses the same router as the original pair
            let take = excess
                .len()
                .min(cfg.n() as usize)
                .min(allowance_unchecked(near, cfg.n()) as usize)
                .min(allowance_unchecked(level, cfg.n()) as usize);
            if take == 0 {
                break;
            }
            free.remove(&slot);
            let relay = CoreId(next_core);
            next_core += 1;
            let moved: Vec<NeuronId> = excess.drain(..take).collect();
            for &s in &moved {
                rerouted.insert((target, s), (relay, near));
            }
            out.core_slot.insert(relay, SlotId(slot));
            out.relays.push(RelayCore { core: relay, sources: moved });
        }
    }

    for rec in out.edges.iter_mut().filter(|r| r.status == EdgeStatus::Flagged) {
        let Some(&target) = placement.neuron_core.get(&rec.dst) else { continue };
        if let Some(&(relay_core, level)) = rerouted.get(&(target, rec.src)) {
            rec.status = EdgeStatus::Relayed { relay_core, level };
        }
    }
    out.cores_used += out.relays.len() - placement.relays.len();
    debug_assert!(out.flagged_count() <= placement.flagged_count());
    Ok(out)
}
