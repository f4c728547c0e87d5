use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Network;

/// Small-world diagnostics of a network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub num_neurons: usize,
    pub num_edges: usize,
    pub mean_in_degree: f64,
    /// Transitivity of the undirected projection: closed triples over connected triples.
    pub global_clustering_coefficient: f64,
    /// Mean BFS distance over ordered pairs of the largest component.
    pub mean_shortest_path: f64,
    /// False when the largest component has fewer than two neurons.
    pub path_length_defined: bool,
    pub largest_component: usize,
}

/// Undirected projection as sorted adjacency lists over dense indices.
fn undirected_adjacency(net: &Network) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); net.num_neurons()];
    for (s, d) in net.dense_edges() {
        adj[s as usize].push(d);
        adj[d as usize].push(s);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

pub fn graph_stats(net: &Network) -> GraphStats {
    let n = net.num_neurons();
    let adj = undirected_adjacency(net);

    let mut closed = 0u64;
    let mut triples = 0u64;
    for list in &adj {
        let deg = list.len() as u64;
        triples += deg * deg.saturating_sub(1) / 2;
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if adj[a as usize].binary_search(&b).is_ok() {
                    closed += 1;
                }
            }
        }
    }
    let clustering = if triples == 0 { 0.0 } else { closed as f64 / triples as f64 };

    // components in order of lowest member; the first largest wins
    let mut comp = vec![usize::MAX; n];
    let mut largest: Vec<u32> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let members = bfs_order(&adj, start as u32, &mut comp, start);
        if members.len() > largest.len() {
            largest = members;
        }
    }

    let k = largest.len();
    let (mean_path, defined) = if k >= 2 {
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        let mut total = 0u64;
        for &src in &largest {
            for &v in &largest {
                dist[v as usize] = u32::MAX;
            }
            dist[src as usize] = 0;
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let du = dist[u as usize];
                total += du as u64;
                for &w in &adj[u as usize] {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        (total as f64 / (k as f64 * (k as f64 - 1.0)), true)
    } else {
        (0.0, false)
    };

    GraphStats {
        num_neurons: n,
        num_edges: net.num_edges(),
        mean_in_degree: if n == 0 { 0.0 } else { net.num_edges() as f64 / n as f64 },
        global_clustering_coefficient: clustering,
        mean_shortest_path: mean_path,
        path_length_defined: defined,
        largest_component: k,
    }
}

fn bfs_order(adj: &[Vec<u32>], start: u32, comp: &mut [usize], label: usize) -> Vec<u32> {
    let mut order = vec![start];
    comp[start as usize] = label;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in &adj[u as usize] {
            if comp[w as usize] == usize::MAX {
                comp[w as usize] = label;
                order.push(w);
            }
        }
    }
    order
}
