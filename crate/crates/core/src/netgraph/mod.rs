//! Directed neuron graphs.
//!
//! A [`Network`] is an edge set over dense neuron ids. Neurons and edges are
//! kept sorted, which makes serialization canonical and lets lookups use
//! binary search. Self-loops are rejected and duplicate edges collapse.

mod generate;
mod io;
mod perturb;
mod stats;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};

pub use generate::{generate_canonical, random_network, CanonicalParams, DistanceMode};
pub use io::{parse_edge_list, write_edge_list};
pub use perturb::{perturb_remove_fraction, perturb_remove_neurons};
pub use stats::{graph_stats, GraphStats};

/// Identifier of a neuron within one network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NeuronId(pub u32);

impl fmt::Display for NeuronId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for NeuronId {
    fn from(v: u32) -> Self {
        NeuronId(v)
    }
}

/// A directed synapse `src -> dst`.
pub type Edge = (NeuronId, NeuronId);

/// Directed graph of neurons and synapses with optional population tags.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "NetworkFile", into = "NetworkFile")]
pub struct Network {
    neurons: Vec<NeuronId>,
    edges: Vec<Edge>,
    populations: Option<BTreeMap<NeuronId, u32>>,
}

impl Network {
    /// Builds a network, sorting neurons and edges and collapsing duplicates.
    ///
    /// Self-loops and edges whose endpoints are not listed as neurons are
    /// rejected with a structural error.
    pub fn new(
        neurons: impl IntoIterator<Item = NeuronId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut neurons: Vec<NeuronId> = neurons.into_iter().collect();
        neurons.sort_unstable();
        neurons.dedup();
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        for &(src, dst) in &edges {
            if src == dst {
                return Err(structural(format!("self-loop on neuron {src}")));
            }
            for end in [src, dst] {
                if neurons.binary_search(&end).is_err() {
                    return Err(structural(format!("edge ({src}, {dst}) references unknown neuron {end}")));
                }
            }
        }
        Ok(Network { neurons, edges, populations: None })
    }

    /// Builds a network whose neuron set is exactly the edge endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let neurons: Vec<NeuronId> = edges.iter().flat_map(|&(s, d)| [s, d]).collect();
        Network::new(neurons, edges)
    }

    /// Attaches population tags. Every tagged neuron must exist.
    pub fn with_populations(mut self, populations: BTreeMap<NeuronId, u32>) -> Result<Self> {
        if let Some(missing) = populations.keys().find(|id| !self.contains(**id)) {
            return Err(Error::UnknownNeuron(*missing));
        }
        self.populations = Some(populations);
        Ok(self)
    }

    /// Inputs must already be sorted, unique and closed.
    pub(crate) fn from_parts_unchecked(
        neurons: Vec<NeuronId>,
        edges: Vec<Edge>,
        populations: Option<BTreeMap<NeuronId, u32>>,
    ) -> Self {
        debug_assert!(neurons.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Network { neurons, edges, populations }
    }

    pub fn neurons(&self) -> &[NeuronId] {
        &self.neurons
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn populations(&self) -> Option<&BTreeMap<NeuronId, u32>> {
        self.populations.as_ref()
    }

    pub fn num_neurons(&self) -> usize {
        self.neurons.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neurons.is_empty()
    }

    pub fn contains(&self, id: NeuronId) -> bool {
        self.neurons.binary_search(&id).is_ok()
    }

    pub fn contains_edge(&self, edge: Edge) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// Dense position of `id` in [`Network::neurons`].
    pub fn index_of(&self, id: NeuronId) -> Option<usize> {
        self.neurons.binary_search(&id).ok()
    }

    /// Number of in-edges of `neuron`.
    pub fn fan_in(&self, neuron: NeuronId) -> Result<usize> {
        if !self.contains(neuron) {
            return Err(Error::UnknownNeuron(neuron));
        }
        Ok(self.edges.iter().filter(|&&(_, dst)| dst == neuron).count())
    }

    /// In-degree of every neuron, indexed like [`Network::neurons`].
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.neurons.len()];
        for &(_, dst) in &self.edges {
            deg[self.neurons.binary_search(&dst).expect("closed edge set")] += 1;
        }
        deg
    }

    /// Edges translated to dense neuron indices.
    pub(crate) fn dense_edges(&self) -> Vec<(u32, u32)> {
        let lookup = DenseIndex::new(&self.neurons);
        self.edges.iter().map(|&(s, d)| (lookup.get(s), lookup.get(d))).collect()
    }
}

/// Maps neuron ids to dense indices without hashing when ids are compact.
pub(crate) struct DenseIndex<'a> {
    neurons: &'a [NeuronId],
    table: Option<Vec<u32>>,
}

impl<'a> DenseIndex<'a> {
    pub(crate) fn new(neurons: &'a [NeuronId]) -> Self {
        let table = neurons.last().and_then(|max| {
            let span = max.0 as usize + 1;
            (span <= 4 * neurons.len() + 1024).then(|| {
                let mut t = vec![u32::MAX; span];
                for (i, id) in neurons.iter().enumerate() {
                    t[id.0 as usize] = i as u32;
                }
                t
            })
        });
        DenseIndex { neurons, table }
    }

    /// Panics if `id` is absent; callers only pass ids taken from the same network.
    pub(crate) fn get(&self, id: NeuronId) -> u32 {
        match &self.table {
            Some(t) => {
                let v = t[id.0 as usize];
                assert!(v != u32::MAX, "neuron {id} not indexed");
                v
            }
            None => self.neurons.binary_search(&id).expect("neuron not indexed") as u32,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    neurons: Vec<NeuronId>,
    edges: Vec<[NeuronId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    populations: Option<BTreeMap<NeuronId, u32>>,
}

impl TryFrom<NetworkFile> for Network {
    type Error = Error;

    fn try_from(file: NetworkFile) -> Result<Self> {
        let net = Network::new(file.neurons, file.edges.into_iter().map(|[s, d]| (s, d)))?;
        match file.populations {
            Some(p) => net.with_populations(p),
            None => Ok(net),
        }
    }
}

impl From<Network> for NetworkFile {
    fn from(net: Network) -> Self {
        NetworkFile {
            neurons: net.neurons,
            edges: net.edges.into_iter().map(|(s, d)| [s, d]).collect(),
            populations: net.populations,
        }
    }
}

impl Network {
    /// Canonical JSON form: neurons and edges sorted ascending.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("network serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
