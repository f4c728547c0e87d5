use std::collections::BTreeMap;

use super::{connection_counts, distance_matrix, sorted_pairs, CliqueCover};
use crate::error::{structural, Result};
use crate::hwmodel::{allowance_unchecked, router_level, HardwareConfig, SlotId};
use crate::netgraph::Network;
use crate::placement::{CoreId, EdgeRecord, EdgeStatus, Placement};

/// (target core, source core, source neuron)
type Sender = (u32, u32, u32);

/// Routes every synapse given a cover and its slot assignment.
///
/// Intra-core synapses are always placed at level 0. Core pairs are visited
/// nearest first by placement distance; for a pair at router level `l` the
/// lowest-id source neurons are admitted up to the level-`l` allowance, and
/// all synapses from admitted sources are placed. The rest are flagged.
pub fn place_connections(
    net: &Network,
    cover: &CliqueCover,
    slots: &[SlotId],
    cfg: &HardwareConfig,
) -> Result<Placement> {
    let core = cover.core_assignment(net)?;
    if slots.len() != cover.len() {
        return Err(structural(format!("{} slots for {} cores", slots.len(), cover.len())));
    }
    let mut used = slots.to_vec();
    used.sort_unstable();
    if used.windows(2).any(|w| w[0] == w[1]) {
        return Err(structural("two cores share a slot"));
    }
    if let Some(s) = used.last().filter(|s| s.0 >= cfg.total_slots()) {
        return Err(structural(format!("slot {s} outside 0..{}", cfg.total_slots())));
    }

    let dense = net.dense_edges();
    let level =
        |a: u32, b: u32| router_level(slots[a as usize].0 as u64, slots[b as usize].0 as u64, cfg.b());

    // distinct (target core, source core, source neuron) triples
    let mut senders: Vec<Sender> = dense
        .iter()
        .filter_map(|&(s, d)| {
            let (cs, cd) = (core[s as usize], core[d as usize]);
            (cs != cd).then_some((cd, cs, s))
        })
        .collect();
    senders.sort_unstable();
    senders.dedup();

    let mut by_pair: BTreeMap<(u32, u32), &[Sender]> = BTreeMap::new();
    let mut start = 0;
    while start < senders.len() {
        let key = (senders[start].0, senders[start].1);
        let end = start + senders[start..].partition_point(|t| (t.0, t.1) == key);
        by_pair.insert(key, &senders[start..end]);
        start = end;
    }

    let e = connection_counts(net, cover)?;
    let dist = distance_matrix(&e, cfg.n());
    // admitted (target core, source neuron)
    let mut admitted: Vec<(u32, u32)> = Vec::new();
    for (i, j) in sorted_pairs(&dist) {
        let Some(group) = by_pair.get(&(i as u32, j as u32)) else { continue };
        let allowance = allowance_unchecked(level(i as u32, j as u32), cfg.n()) as usize;
        admitted.extend(group.iter().take(allowance).map(|&(t, _, s)| (t, s)));
    }
    admitted.sort_unstable();

    let edges = net
        .edges()
        .iter()
        .zip(&dense)
        .map(|(&(src, dst), &(s, d))| {
            let (cs, cd) = (core[s as usize], core[d as usize]);
            let status = if cs == cd {
                EdgeStatus::Placed { level: 0 }
            } else if admitted.binary_search(&(cd, s)).is_ok() {
                EdgeStatus::Placed { level: level(cd, cs) }
            } else {
                EdgeStatus::Flagged
            };
            EdgeRecord { src, dst, status }
        })
        .collect();

    Ok(Placement {
        neuron_core: net.neurons().iter().zip(&core).map(|(&v, &c)| (v, CoreId(c))).collect(),
        core_slot: slots.iter().enumerate().map(|(c, &s)| (CoreId(c as u32), s)).collect(),
        edges,
        relays: Vec::new(),
        cores_used: cover.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hwmodel::validate_placement;
    use crate::netgraph::{generate_canonical, CanonicalParams, NeuronId};

    fn consecutive(k: u32) -> Vec<SlotId> {
        (0..k).map(SlotId).collect()
    }

    #[test]
    fn ground_truth_has_no_flags() {
        let cfg = HardwareConfig::new(16, 4, 2).unwrap();
        let net = generate_canonical(&CanonicalParams::tree(16, 7, 4), 0).unwrap();
        let cover = CliqueCover::from_populations(&net).unwrap();
        let p = place_connections(&net, &cover, &consecutive(7), &cfg).unwrap();
        assert_eq!(p.flagged_count(), 0);
        assert_eq!(p.cores_used, 7);
        assert_eq!(p.max_level(), Some(2));
        assert!(validate_placement(&p, &net, &cfg).unwrap().ok);
    }

    #[test]
    fn boundary_pair_admits_half_its_sources() {
        let cfg = HardwareConfig::new(16, 4, 2).unwrap();
        let net = generate_canonical(&CanonicalParams::line(16, 5), 0).unwrap();
        let cover = CliqueCover::from_populations(&net).unwrap();
        let p = place_connections(&net, &cover, &consecutive(5), &cfg).unwrap();
        let flagged: Vec<_> = p.edges.iter().filter(|e| e.status == EdgeStatus::Flagged).collect();
        // 4 excess sources x 16 targets, in each direction across the boundary
        assert_eq!(flagged.len(), 128);
        let mut srcs: Vec<u32> = flagged.iter().filter(|e| e.dst.0 / 16 == 3).map(|e| e.src.0).collect();
        srcs.dedup();
        assert_eq!(srcs, vec![68, 69, 70, 71]);
        assert!(flagged
            .iter()
            .all(|e| (e.src.0 / 16, e.dst.0 / 16) == (4, 3) || (e.src.0 / 16, e.dst.0 / 16) == (3, 4)));
        let report = validate_placement(&p, &net, &cfg).unwrap();
        assert!(report.ok);
        assert_eq!(report.unplaced_count, 128);
    }

    #[test]
    fn intra_core_edges_are_level_zero() {
        let cfg = HardwareConfig::new(4, 2, 1).unwrap();
        let net = Network::new(
            (0..4).map(NeuronId),
            [(NeuronId(0), NeuronId(1)), (NeuronId(1), NeuronId(0)), (NeuronId(2), NeuronId(3))],
        )
        .unwrap();
        let cover = CliqueCover::new(vec![(0..4).map(NeuronId).collect()]).unwrap();
        let p = place_connections(&net, &cover, &[SlotId(1)], &cfg).unwrap();
        assert!(p.edges.iter().all(|e| e.status == EdgeStatus::Placed { level: 0 }));
    }

    #[test]
    fn rejects_inconsistent_slots() {
        let cfg = HardwareConfig::new(4, 2, 1).unwrap();
        let net = Network::new((0..2).map(NeuronId), []).unwrap();
        let cover = CliqueCover::new(vec![vec![NeuronId(0)], vec![NeuronId(1)]]).unwrap();
        assert!(place_connections(&net, &cover, &[SlotId(0)], &cfg).is_err());
        assert!(place_connections(&net, &cover, &[SlotId(1), SlotId(1)], &cfg).is_err());
        assert!(place_connections(&net, &cover, &[SlotId(0), SlotId(2)], &cfg).is_err());
    }
}
