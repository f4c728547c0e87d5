use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{param, structural, Result};
use crate::netgraph::{Network, NeuronId};

/// Disjoint groups of mutually connected neurons, one per logical core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    cliques: Vec<Vec<NeuronId>>,
}

impl CliqueCover {
    /// Wraps explicit groups. Groups must be non-empty and pairwise disjoint.
    pub fn new(cliques: Vec<Vec<NeuronId>>) -> Result<Self> {
        let mut all: Vec<NeuronId> = cliques.iter().flatten().copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != total {
            return Err(structural("cliques overlap"));
        }
        if cliques.iter().any(|c| c.is_empty()) {
            return Err(structural("empty clique"));
        }
        Ok(CliqueCover { cliques })
    }

    /// One group per population tag, ordered by population index.
    pub fn from_populations(net: &Network) -> Result<Self> {
        let tags = net.populations().ok_or_else(|| structural("network carries no population tags"))?;
        let mut groups: BTreeMap<u32, Vec<NeuronId>> = BTreeMap::new();
        for &v in net.neurons() {
            let pop = tags.get(&v).ok_or_else(|| structural(format!("neuron {v} has no population")))?;
            groups.entry(*pop).or_default().push(v);
        }
        CliqueCover::new(groups.into_values().collect())
    }

    pub fn cliques(&self) -> &[Vec<NeuronId>] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Core index of every neuron, indexed like `net.neurons()`.
    ///
    /// Fails unless the cover partitions exactly the network's neurons.
    pub fn core_assignment(&self, net: &Network) -> Result<Vec<u32>> {
        let mut core = vec![u32::MAX; net.num_neurons()];
        let mut covered = 0;
        for (c, clique) in self.cliques.iter().enumerate() {
            for &v in clique {
                let i = net
                    .index_of(v)
                    .ok_or_else(|| structural(format!("cover contains unknown neuron {v}")))?;
                core[i] = c as u32;
                covered += 1;
            }
        }
        if covered != net.num_neurons() {
            return Err(structural(format!("cover spans {covered} of {} neurons", net.num_neurons())));
        }
        Ok(core)
    }
}

/// Sorted in- and out-neighbour lists over dense indices.
struct Adjacency {
    incoming: Vec<Vec<u32>>,
    outgoing: Vec<Vec<u32>>,
}

impl Adjacency {
    fn new(net: &Network) -> Self {
        let n = net.num_neurons();
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        // dense edges arrive sorted by source
        for (s, d) in net.dense_edges() {
            outgoing[s as usize].push(d);
            incoming[d as usize].push(s);
        }
        for list in &mut incoming {
            list.sort_unstable();
        }
        Adjacency { incoming, outgoing }
    }

    fn mutual(&self, a: u32, b: u32) -> bool {
        self.outgoing[a as usize].binary_search(&b).is_ok()
            && self.incoming[a as usize].binary_search(&b).is_ok()
    }

    fn undirected_degree(&self, v: usize) -> usize {
        let (a, b) = (&self.incoming[v], &self.outgoing[v]);
        let (mut i, mut j, mut shared) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        a.len() + b.len() - shared
    }
}

/// Greedy clique cover with cliques of at most `max_size` neurons.
///
/// Clique members are connected in both directions. Each clique is seeded
/// with the uncovered neuron of highest undirected degree and grown one
/// neuron at a time. The next member is the candidate whose closed
/// in-neighbourhood overlaps most with those of the current members; fewer
/// in-neighbours and then the lower id break ties. Neurons that share a
/// clique in a dense cluster receive from the same sources, so this keeps
/// clusters together even when hub neurons of neighbouring clusters are
/// mutually connected.
pub fn clique_cover(net: &Network, max_size: usize) -> Result<CliqueCover> {
    if max_size == 0 {
        return Err(param("clique size limit must be at least 1"));
    }
    let n = net.num_neurons();
    let adj = Adjacency::new(net);

    let mut order: Vec<usize> = (0..n).collect();
    let degree: Vec<usize> = (0..n).map(|v| adj.undirected_degree(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));

    let mut covered = vec![false; n];
    // members whose closed in-neighbourhood contains each neuron
    let mut common = vec![0u32; n];
    let mut cliques = Vec::new();

    for &seed in &order {
        if covered[seed] {
            continue;
        }
        let mut members = vec![seed as u32];
        covered[seed] = true;
        let mut touched: Vec<u32> = Vec::new();
        let admit = |m: u32, common: &mut [u32], touched: &mut Vec<u32>| {
            for &u in adj.incoming[m as usize].iter().chain(std::iter::once(&m)) {
                if common[u as usize] == 0 {
                    touched.push(u);
                }
                common[u as usize] += 1;
            }
        };
        admit(seed as u32, &mut common, &mut touched);

        let mut candidates: Vec<u32> = adj.outgoing[seed]
            .iter()
            .copied()
            .filter(|&v| !covered[v as usize] && adj.mutual(seed as u32, v))
            .collect();

        while members.len() < max_size && !candidates.is_empty() {
            let best = candidates
                .iter()
                .copied()
                .max_by_key(|&v| {
                    let inc = &adj.incoming[v as usize];
                    let overlap: u64 =
                        inc.iter().chain(std::iter::once(&v)).map(|&u| common[u as usize] as u64).sum();
                    (overlap, std::cmp::Reverse(inc.len()), std::cmp::Reverse(v))
                })
                .expect("non-empty candidates");
            members.push(best);
            covered[best as usize] = true;
            admit(best, &mut common, &mut touched);
            candidates.retain(|&v| v != best && adj.mutual(best, v));
        }

        for u in touched {
            common[u as usize] = 0;
        }
        members.sort_unstable();
        cliques.push(members.into_iter().map(|i| net.neurons()[i as usize]).collect());
    }
    Ok(CliqueCover { cliques })
}
