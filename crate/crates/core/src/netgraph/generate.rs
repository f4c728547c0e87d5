use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Edge, Network, NeuronId};
use crate::error::{param, Result};
use crate::hwmodel::router_level;

/// How distances between populations are measured when wiring a canonical network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    /// Router-tree level between population slots.
    #[default]
    Tree,
    /// Populations on a line; distance is `|i - j|`.
    Line,
}

/// Shape of a canonical small-world network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalParams {
    /// Neurons per population (and per core).
    pub n: u32,
    pub num_cores: u32,
    pub branching: u32,
    #[serde(default)]
    pub distance_mode: DistanceMode,
    /// Populations farther apart than this get no connections.
    #[serde(default)]
    pub max_level: Option<u32>,
}

impl CanonicalParams {
    pub fn tree(n: u32, num_cores: u32, branching: u32) -> Self {
        CanonicalParams { n, num_cores, branching, distance_mode: DistanceMode::Tree, max_level: None }
    }

    pub fn line(n: u32, num_cores: u32) -> Self {
        CanonicalParams { n, num_cores, branching: 2, distance_mode: DistanceMode::Line, max_level: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(param(format!("n must be at least 2, got {}", self.n)));
        }
        if self.num_cores < 1 {
            return Err(param("num_cores must be at least 1"));
        }
        if self.branching < 2 {
            return Err(param(format!("branching must be at least 2, got {}", self.branching)));
        }
        if (self.n as u64) * (self.num_cores as u64) > u32::MAX as u64 {
            return Err(param("network too large for 32-bit neuron ids"));
        }
        Ok(())
    }

    /// Distance between population slots `a` and `b` under this mode.
    pub fn distance(&self, a: u32, b: u32) -> u32 {
        match self.distance_mode {
            DistanceMode::Tree => router_level(a as u64, b as u64, self.branching),
            DistanceMode::Line => a.abs_diff(b),
        }
    }

    /// Number of source neurons a population sends to another at `distance`.
    pub fn sources_at(&self, distance: u32) -> u32 {
        if self.max_level.is_some_and(|cap| distance > cap) || distance >= 32 {
            0
        } else {
            self.n >> distance
        }
    }
}

/// Builds the canonical network for `params`.
///
/// Population `p` owns neurons `p*n .. (p+1)*n`, all-to-all connected. For
/// every ordered pair of populations at distance `d`, the `n >> d` lowest-id
/// neurons of the source connect to every neuron of the target. The seed is
/// accepted for interface symmetry with the random generators; the output is
/// fully determined by `params`.
pub fn generate_canonical(params: &CanonicalParams, _seed: u64) -> Result<Network> {
    params.validate()?;
    let n = params.n;
    let cores = params.num_cores;
    let id = |pop: u32, k: u32| NeuronId(pop * n + k);

    let mut edges: Vec<Edge> = Vec::new();
    for target in 0..cores {
        for source in 0..cores {
            let senders =
                if source == target { n } else { params.sources_at(params.distance(target, source)) };
            for s in 0..senders {
                for t in 0..n {
                    if source == target && s == t {
                        continue;
                    }
                    edges.push((id(source, s), id(target, t)));
                }
            }
        }
    }
    edges.sort_unstable();

    let neurons: Vec<NeuronId> = (0..cores * n).map(NeuronId).collect();
    let populations: BTreeMap<NeuronId, u32> = neurons.iter().map(|&v| (v, v.0 / n)).collect();
    Ok(Network::from_parts_unchecked(neurons, edges, Some(populations)))
}

/// Uniform random directed graph with exactly `num_edges` distinct edges and
/// no self-loops.
pub fn random_network(num_neurons: u32, num_edges: usize, seed: u64) -> Result<Network> {
    let n = num_neurons as usize;
    let slots = n * n.saturating_sub(1);
    if num_edges > slots {
        return Err(param(format!(
            "{num_edges} edges do not fit in a simple digraph on {num_neurons} neurons"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Edge> = sample(&mut rng, slots, num_edges)
        .into_iter()
        .map(|k| {
            let src = k / (n - 1);
            let mut dst = k % (n - 1);
            if dst >= src {
                dst += 1;
            }
            (NeuronId(src as u32), NeuronId(dst as u32))
        })
        .collect();
    edges.sort_unstable();
    let neurons = (0..num_neurons).map(NeuronId).collect();
    Ok(Network::from_parts_unchecked(neurons, edges, None))
}
