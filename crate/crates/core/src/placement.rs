//! Placement data model shared by the placer and the validator.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hwmodel::SlotId;
use crate::netgraph::NeuronId;

/// Logical core index, as produced by the clique cover (plus any relay cores).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoreId(pub u32);

impl fmt::Display for CoreId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Routing outcome of one synapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum EdgeStatus {
    /// Routed directly through the router at `level`.
    Placed { level: u32 },
    /// Routed through a relay entry on `relay_core`; `level` is the relay-to-target hop.
    Relayed { relay_core: CoreId, level: u32 },
    /// Could not be routed within the fan-in allowances.
    Flagged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub src: NeuronId,
    pub dst: NeuronId,
    #[serde(flatten)]
    pub status: EdgeStatus,
}

/// A core allocated after the main pass to forward spikes of `sources`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelayCore {
    pub core: CoreId,
    pub sources: Vec<NeuronId>,
}

/// Neuron-to-core and core-to-slot maps plus the routing status of every edge.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Placement {
    pub neuron_core: BTreeMap<NeuronId, CoreId>,
    pub core_slot: BTreeMap<CoreId, SlotId>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relays: Vec<RelayCore>,
    pub cores_used: usize,
}

impl Placement {
    pub fn flagged_count(&self) -> usize {
        self.edges.iter().filter(|e| e.status == EdgeStatus::Flagged).count()
    }

    /// Highest router level used by any routed hop, or `None` if nothing is routed.
    pub fn max_level(&self) -> Option<u32> {
        self.edges
            .iter()
            .filter_map(|e| match e.status {
                EdgeStatus::Placed { level } | EdgeStatus::Relayed { level, .. } => Some(level),
                EdgeStatus::Flagged => None,
            })
            .max()
    }

    pub fn slot_of(&self, neuron: NeuronId) -> Option<SlotId> {
        self.neuron_core.get(&neuron).and_then(|c| self.core_slot.get(c)).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("placement serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("placement serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_records_use_flat_status_tags() {
        let placed =
            EdgeRecord { src: NeuronId(1), dst: NeuronId(2), status: EdgeStatus::Placed { level: 1 } };
        let flagged = EdgeRecord { src: NeuronId(2), dst: NeuronId(1), status: EdgeStatus::Flagged };
        assert_eq!(
            serde_json::to_string(&placed).unwrap(),
            r#"{"src":1,"dst":2,"status":"placed","level":1}"#
        );
        assert_eq!(serde_json::to_string(&flagged).unwrap(), r#"{"src":2,"dst":1,"status":"flagged"}"#);
        let back: EdgeRecord = serde_json::from_str(r#"{"src":2,"dst":1,"status":"flagged"}"#).unwrap();
        assert_eq!(back, flagged);
    }

    #[test]
    fn placement_json_layout() {
        let p = Placement {
            neuron_core: [(NeuronId(0), CoreId(0)), (NeuronId(1), CoreId(0))].into(),
            core_slot: [(CoreId(0), SlotId(3))].into(),
            edges: vec![EdgeRecord {
                src: NeuronId(0),
                dst: NeuronId(1),
                status: EdgeStatus::Placed { level: 0 },
            }],
            relays: vec![],
            cores_used: 1,
        };
        let text = p.to_json();
        assert_eq!(
            text,
            r#"{"neuron_core":{"0":0,"1":0},"core_slot":{"0":3},"edges":[{"src":0,"dst":1,"status":"placed","level":0}],"cores_used":1}"#
        );
        assert_eq!(Placement::from_json(&text).unwrap(), p);
        assert_eq!(p.max_level(), Some(0));
        assert_eq!(p.flagged_count(), 0);
    }
}
