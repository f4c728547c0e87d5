use serde::{Deserialize, Serialize};

use super::CliqueCover;
use crate::error::Result;
use crate::netgraph::Network;

/// Dense row-major square matrix indexed by logical core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreMatrix<T> {
    size: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> CoreMatrix<T> {
    pub fn new(size: usize) -> Self {
        CoreMatrix { size, data: vec![T::default(); size * size] }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        CoreMatrix { size, data: rows.concat() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.size + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.size.max(1)).take(self.size)
    }
}

/// What `e(i, j)` counts between a source core `j` and a target core `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Distinct neurons of `j` with at least one synapse into `i`.
    #[default]
    DistinctSources,
    /// Raw synapse count from `j` into `i`.
    Synapses,
}

/// `e[i][j]`: connections core `i` receives from core `j`. The diagonal is zero.
pub fn connection_counts(net: &Network, cover: &CliqueCover) -> Result<CoreMatrix<u32>> {
    connection_counts_with(net, cover, CountMode::DistinctSources)
}

pub fn connection_counts_with(
    net: &Network,
    cover: &CliqueCover,
    mode: CountMode,
) -> Result<CoreMatrix<u32>> {
    let core = cover.core_assignment(net)?;
    let mut e = CoreMatrix::new(cover.len());
    let mut hops: Vec<(u32, u32, u32)> = net
        .dense_edges()
        .into_iter()
        .filter_map(|(s, d)| {
            let (cs, cd) = (core[s as usize], core[d as usize]);
            (cs != cd).then_some((cd, cs, s))
        })
        .collect();
    if mode == CountMode::DistinctSources {
        hops.sort_unstable();
        hops.dedup();
    }
    for (target, source, _) in hops {
        let (i, j) = (target as usize, source as usize);
        e.set(i, j, e.get(i, j) + 1);
    }
    Ok(e)
}

/// Placement priority between cores: `0` on the diagonal, `-1` when `e` is
/// zero, otherwise `floor(n / e) + 1`. Not necessarily symmetric.
pub type DistanceMatrix = CoreMatrix<i64>;

pub fn distance_matrix(e: &CoreMatrix<u32>, n: u32) -> DistanceMatrix {
    let size = e.size();
    let mut dist = CoreMatrix::new(size);
    for i in 0..size {
        for j in 0..size {
            let d = match e.get(i, j) {
                _ if i == j => 0,
                0 => -1,
                count => (n / count) as i64 + 1,
            };
            dist.set(i, j, d);
        }
    }
    dist
}

/// Ordered core pairs `(i, j)` with positive distance, nearest first.
pub fn sorted_pairs(dist: &DistanceMatrix) -> Vec<(usize, usize)> {
    let size = dist.size();
    let mut pairs: Vec<(usize, usize)> =
        (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).filter(|&(i, j)| dist.get(i, j) > 0).collect();
    pairs.sort_by_key(|&(i, j)| (dist.get(i, j), i, j));
    pairs
}
